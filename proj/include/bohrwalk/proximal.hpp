#pragma once

#include "bohrwalk/intmat.hpp"

#include <complex>
#include <vector>

namespace bohrwalk {

struct Root {
  std::complex<double> value;
  int multiplicity = 1;
};

struct ModulusCluster {
  double modulus = 0.0;
  int multiplicity = 0;
};

struct RootReport {
  std::vector<Root> roots;                // distinct roots with exact multiplicities
  std::vector<ModulusCluster> clusters;   // sorted by decreasing modulus
};

/// Distinct complex roots with multiplicities, and their moduli clustered at
/// relative tolerance tol.  Throws RootFindingError if the iteration stalls.
RootReport eigen_moduli(const IntPolynomial& p, double tol = 1e-9);

/// Square-free decomposition (Yun): pairs (monic square-free factor, multiplicity).
std::vector<std::pair<IntPolynomial, int>> squarefree_decomposition(const IntPolynomial& p);

struct SpectrumReport {
  int dimension = 0;
  std::vector<double> moduli;
  std::vector<int> multiplicities;
  double top_gap = 1.0;  // first / second distinct modulus, 1 when there is only one
  bool proximal = false;
  std::vector<BigInt> char_poly;
};

SpectrumReport spectrum_report(const IntPolynomial& p, double tol = 1e-9);
SpectrumReport is_proximal(const Adjoint& ad, double tol = 1e-9);
SpectrumReport is_proximal(const Unimodular& g, double tol = 1e-9);

}  // namespace bohrwalk
