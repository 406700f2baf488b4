// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RBSWEEP_MATRIX_IO_HPP
#define RBSWEEP_MATRIX_IO_HPP

#include <string>
#include "rbsweep/fom.hpp"

namespace rbsweep
{

// Reads a "%%MatrixMarket matrix coordinate" file (real or integer, general or
// symmetric). Symmetric storage is expanded to both triangles.
SparseMatrix read_matrix_market(const std::string &path);

// Writes the lower triangle with a symmetric header when symmetric is set.
void write_matrix_market(const std::string &path, const SparseMatrix &A,
                         bool symmetric = true);

// One entry per line, "re im" or a single real value. Lines starting with '#' or '%'
// are skipped.
ComplexVector read_vector(const std::string &path);
void write_vector(const std::string &path, const ComplexVector &v);

// Dense complex matrix as "%%MatrixMarket matrix array complex general", column major.
// Used for basis export; columns are written in enrichment order.
void write_dense_matrix(const std::string &path, const ComplexMatrix &A);
ComplexMatrix read_dense_matrix(const std::string &path);

}  // namespace rbsweep

#endif  // RBSWEEP_MATRIX_IO_HPP
