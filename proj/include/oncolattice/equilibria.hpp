#ifndef ONCOLATTICE_EQUILIBRIA_HPP
#define ONCOLATTICE_EQUILIBRIA_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "oncolattice/linalg.hpp"
#include "oncolattice/local_model.hpp"

namespace oncolattice {

inline constexpr double kMarginalTol = 1e-8;

enum class Stability { Stable, Unstable, Marginal };
enum class VerdictBasis { Analytic, NumericEigen };

struct StabilityVerdict {
  Stability kind = Stability::Unstable;
  double max_real_part = 0.0;  // or signed margin for threshold-based analytic verdicts
  VerdictBasis basis = VerdictBasis::Analytic;
  std::string condition;
};

const char* to_string(Stability s);
const char* to_string(VerdictBasis b);

/// Stable iff m < -tol, Unstable iff m > tol, else Marginal.
StabilityVerdict verdict_from_max_real(double m, VerdictBasis basis, std::string condition = {});

StabilityVerdict numeric_verdict(const DenseMatrix& J);

// ---------------------------------------------------------------- 2 variables

enum class Kind2D { Origin, TumourOnly, InfectedOnly, Coexistence };
const char* to_string(Kind2D k);

struct SteadyState2D {
  Kind2D kind = Kind2D::Origin;
  double x = 0.0;
  double y = 0.0;
};

struct Classified2D {
  SteadyState2D state;
  StabilityVerdict verdict;
  std::vector<std::complex<double>> eigenvalues;
};

/// Threshold above which InfectedOnly is stable; +inf when r <= gamma.
double infected_only_threshold(const ReducedParams& p);

std::optional<SteadyState2D> coexistence_2d(const ReducedParams& p);

/// Every existing steady state with its closed-form verdict.
std::vector<Classified2D> classify_2d(const ReducedParams& p);

// ---------------------------------------------------------------- 3 variables

enum class Kind3D { TumourFree, TumourDominant, UninfectedFree, Interior };
const char* to_string(Kind3D k);

struct SteadyState3D {
  Kind3D kind = Kind3D::TumourFree;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  std::vector<std::complex<double>> eigenvalues;
};

struct Classified3D {
  SteadyState3D state;
  StabilityVerdict verdict;
  bool multiple_roots = false;
};

Classified3D tumour_free_3d(const NondimParams& p);
Classified3D tumour_dominant_3d(const NondimParams& p);

/// Residual of gamma(z) = r(1 + beta/q2 - beta/(q2 z)).
double uninfected_free_residual(double z, const NondimParams& p);

/// All roots in the admissible z bracket; empty when none. multiple_roots set when > 1.
std::vector<Classified3D> uninfected_free_3d(const NondimParams& p);

/// Newton iteration from a guess (typically a trajectory endpoint).
std::optional<Classified3D> interior_3d(const NondimParams& p, const NondimState& guess);

}  // namespace oncolattice

#endif  // ONCOLATTICE_EQUILIBRIA_HPP
