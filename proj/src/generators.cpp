// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <vector>
#include <unsupported/Eigen/KroneckerProduct>
#include "rbsweep/errors.hpp"
#include "rbsweep/fom.hpp"

namespace rbsweep
{

namespace
{

SparseMatrix tridiagonal(int n, double diag, double off)
{
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(3 * n);
  for (int i = 0; i < n; i++)
  {
    t.emplace_back(i, i, diag);
    if (i + 1 < n)
    {
      t.emplace_back(i, i + 1, off);
      t.emplace_back(i + 1, i, off);
    }
  }
  SparseMatrix A(n, n);
  A.setFromTriplets(t.begin(), t.end());
  return A;
}

SparseMatrix identity(int n)
{
  SparseMatrix A(n, n);
  A.setIdentity();
  return A;
}

}  // namespace

FullOrderModel make_resonator_chain(int n, double coupling, const FrequencyBand &band)
{
  if (n < 2)
  {
    throw ConfigError("resonator chain needs n >= 2");
  }
  if (!(coupling > 0.0))
  {
    throw ConfigError("resonator chain needs a positive coupling");
  }
  ComplexVector b = ComplexVector::Zero(n);
  b(0) = 1.0;
  return FullOrderModel(tridiagonal(n, 2.0 * coupling, -coupling), identity(n), b, band);
}

// Linear elements on [0, L] with Dirichlet ends give the interior matrices
// K1 = tridiag(-1, 2, -1) / h and M1 = h tridiag(1, 4, 1) / 6. The 2-D square uses
// bilinear elements, whose matrices are the Kronecker combinations
// K = K1 ⊗ M1 + M1 ⊗ K1 and M = M1 ⊗ M1.
FullOrderModel make_helmholtz_cavity(int dim, int elements_per_side,
                                     const FrequencyBand &band, int port_node,
                                     double length)
{
  if (dim != 1 && dim != 2)
  {
    throw ConfigError("cavity dimension must be 1 or 2");
  }
  if (elements_per_side < 2)
  {
    throw ConfigError("cavity needs at least 2 elements per side");
  }
  if (!(length > 0.0))
  {
    throw ConfigError("cavity length must be positive");
  }
  const int E = elements_per_side;
  const int n1 = E - 1;
  const double h = length / E;
  SparseMatrix K1 = tridiagonal(n1, 2.0 / h, -1.0 / h);
  SparseMatrix M1 = tridiagonal(n1, 4.0 * h / 6.0, h / 6.0);

  int dof = -1;
  if (dim == 1)
  {
    if (port_node >= 1 && port_node <= E - 1)
    {
      dof = port_node - 1;
    }
  }
  else
  {
    const int i = port_node % (E + 1), j = port_node / (E + 1);
    if (port_node >= 0 && i >= 1 && i <= E - 1 && j >= 1 && j <= E - 1)
    {
      dof = (j - 1) * n1 + (i - 1);
    }
  }
  if (dof < 0)
  {
    throw InvalidPort("port node " + std::to_string(port_node) +
                      " is not an interior node");
  }

  if (dim == 1)
  {
    ComplexVector b = ComplexVector::Zero(n1);
    b(dof) = 1.0;
    return FullOrderModel(K1, M1, b, band);
  }
  SparseMatrix K = Eigen::kroneckerProduct(K1, M1).eval();
  K += Eigen::kroneckerProduct(M1, K1).eval();
  SparseMatrix M = Eigen::kroneckerProduct(M1, M1).eval();
  ComplexVector b = ComplexVector::Zero(n1 * n1);
  b(dof) = 1.0;
  return FullOrderModel(K, M, b, band);
}

}  // namespace rbsweep
