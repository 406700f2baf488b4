// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "rbsweep/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>
#include "rbsweep/errors.hpp"

namespace rbsweep
{

namespace
{

std::string lower(std::string s)
{
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::ifstream open_input(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ParseError("cannot open " + path);
  }
  return in;
}

std::ofstream open_output(const std::string &path)
{
  std::ofstream out(path);
  if (!out)
  {
    throw ConfigError("cannot write " + path);
  }
  out << std::setprecision(17);
  return out;
}

[[noreturn]] void fail(const std::string &path, long line, const std::string &what)
{
  throw ParseError(path + ":" + std::to_string(line) + ": " + what);
}

struct Banner
{
  std::string format, field, symmetry;
};

Banner read_banner(std::istream &in, const std::string &path, long &line_no)
{
  std::string line;
  if (!std::getline(in, line))
  {
    fail(path, 1, "empty file");
  }
  line_no = 1;
  std::istringstream ss(lower(line));
  std::string tag, object;
  Banner banner;
  ss >> tag >> object >> banner.format >> banner.field >> banner.symmetry;
  if (tag != "%%matrixmarket" || object != "matrix")
  {
    fail(path, line_no, "missing %%MatrixMarket matrix banner");
  }
  return banner;
}

// Next line that is neither blank nor a comment.
bool next_data_line(std::istream &in, std::string &line, long &line_no)
{
  while (std::getline(in, line))
  {
    line_no++;
    auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '%' || line[pos] == '#')
    {
      continue;
    }
    return true;
  }
  return false;
}

}  // namespace

SparseMatrix read_matrix_market(const std::string &path)
{
  auto in = open_input(path);
  long line_no = 0;
  const Banner banner = read_banner(in, path, line_no);
  if (banner.format != "coordinate")
  {
    fail(path, 1, "expected coordinate format, got '" + banner.format + "'");
  }
  if (banner.field != "real" && banner.field != "integer" && banner.field != "double")
  {
    fail(path, 1, "unsupported field '" + banner.field + "'");
  }
  const bool symmetric = (banner.symmetry == "symmetric");
  if (!symmetric && banner.symmetry != "general")
  {
    fail(path, 1, "unsupported symmetry '" + banner.symmetry + "'");
  }

  std::string line;
  if (!next_data_line(in, line, line_no))
  {
    fail(path, line_no, "missing size line");
  }
  long rows = 0, cols = 0, nnz = 0;
  {
    std::istringstream ss(line);
    if (!(ss >> rows >> cols >> nnz) || rows <= 0 || cols <= 0 || nnz < 0)
    {
      fail(path, line_no, "bad size line");
    }
  }
  if (symmetric && rows != cols)
  {
    fail(path, line_no, "symmetric matrix must be square");
  }

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(symmetric ? 2 * nnz : nnz);
  for (long k = 0; k < nnz; k++)
  {
    if (!next_data_line(in, line, line_no))
    {
      fail(path, line_no, "expected " + std::to_string(nnz) + " entries, got " +
                              std::to_string(k));
    }
    std::istringstream ss(line);
    long i, j;
    double value;
    if (!(ss >> i >> j >> value))
    {
      fail(path, line_no, "bad entry");
    }
    if (i < 1 || i > rows || j < 1 || j > cols)
    {
      fail(path, line_no, "index out of range");
    }
    triplets.emplace_back(i - 1, j - 1, value);
    if (symmetric && i != j)
    {
      triplets.emplace_back(j - 1, i - 1, value);
    }
  }
  if (next_data_line(in, line, line_no))
  {
    fail(path, line_no, "trailing data after " + std::to_string(nnz) + " entries");
  }

  SparseMatrix A(rows, cols);
  A.setFromTriplets(triplets.begin(), triplets.end());
  A.makeCompressed();
  return A;
}

void write_matrix_market(const std::string &path, const SparseMatrix &A, bool symmetric)
{
  std::vector<Eigen::Triplet<double>> entries;
  for (int k = 0; k < A.outerSize(); k++)
  {
    for (SparseMatrix::InnerIterator it(A, k); it; ++it)
    {
      if (!symmetric || it.row() >= it.col())
      {
        entries.emplace_back(it.row(), it.col(), it.value());
      }
    }
  }
  auto out = open_output(path);
  out << "%%MatrixMarket matrix coordinate real " << (symmetric ? "symmetric" : "general")
      << "\n";
  out << A.rows() << " " << A.cols() << " " << entries.size() << "\n";
  for (const auto &t : entries)
  {
    out << t.row() + 1 << " " << t.col() + 1 << " " << t.value() << "\n";
  }
}

ComplexVector read_vector(const std::string &path)
{
  auto in = open_input(path);
  std::vector<std::complex<double>> values;
  std::string line;
  long line_no = 0;
  while (next_data_line(in, line, line_no))
  {
    std::istringstream ss(line);
    double re, im = 0.0;
    if (!(ss >> re))
    {
      fail(path, line_no, "bad vector entry");
    }
    if (!(ss >> im))
    {
      if (!ss.eof())
      {
        fail(path, line_no, "bad imaginary part");
      }
      im = 0.0;
    }
    std::string extra;
    if (ss >> extra)
    {
      fail(path, line_no, "more than two values on a line");
    }
    values.emplace_back(re, im);
  }
  if (values.empty())
  {
    fail(path, line_no, "no vector entries");
  }
  return Eigen::Map<ComplexVector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

void write_vector(const std::string &path, const ComplexVector &v)
{
  auto out = open_output(path);
  for (Eigen::Index i = 0; i < v.size(); i++)
  {
    out << v(i).real() << " " << v(i).imag() << "\n";
  }
}

void write_dense_matrix(const std::string &path, const ComplexMatrix &A)
{
  auto out = open_output(path);
  out << "%%MatrixMarket matrix array complex general\n";
  out << "% columns in enrichment order\n";
  out << A.rows() << " " << A.cols() << "\n";
  for (Eigen::Index j = 0; j < A.cols(); j++)
  {
    for (Eigen::Index i = 0; i < A.rows(); i++)
    {
      out << A(i, j).real() << " " << A(i, j).imag() << "\n";
    }
  }
}

ComplexMatrix read_dense_matrix(const std::string &path)
{
  auto in = open_input(path);
  long line_no = 0;
  const Banner banner = read_banner(in, path, line_no);
  if (banner.format != "array" || banner.field != "complex")
  {
    fail(path, 1, "expected array complex format");
  }
  std::string line;
  if (!next_data_line(in, line, line_no))
  {
    fail(path, line_no, "missing size line");
  }
  long rows = 0, cols = 0;
  {
    std::istringstream ss(line);
    if (!(ss >> rows >> cols) || rows <= 0 || cols < 0)
    {
      fail(path, line_no, "bad size line");
    }
  }
  ComplexMatrix A(rows, cols);
  for (long j = 0; j < cols; j++)
  {
    for (long i = 0; i < rows; i++)
    {
      if (!next_data_line(in, line, line_no))
      {
        fail(path, line_no, "truncated array");
      }
      std::istringstream ss(line);
      double re, im;
      if (!(ss >> re >> im))
      {
        fail(path, line_no, "bad complex entry");
      }
      A(i, j) = {re, im};
    }
  }
  return A;
}

}  // namespace rbsweep
