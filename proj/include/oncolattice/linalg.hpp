#ifndef ONCOLATTICE_LINALG_HPP
#define ONCOLATTICE_LINALG_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace oncolattice {

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxMatrixDim = 32;

/// Square row-major matrix, n <= 32.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  const std::vector<double>& data() const noexcept { return a_; }

  bool all_finite() const;
  double norm_inf() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

std::vector<double> multiply(const DenseMatrix& m, const std::vector<double>& v);

/// All eigenvalues (with multiplicity), sorted by decreasing real part then imaginary part.
/// Balancing, Hessenberg reduction, Francis double-shift QR.
std::vector<std::complex<double>> eigenvalues(const DenseMatrix& m);

double max_real_part(const std::vector<std::complex<double>>& ev);

struct GershgorinDisc {
  double center = 0.0;
  double radius = 0.0;
};

std::vector<GershgorinDisc> gershgorin_discs(const DenseMatrix& m);
bool discs_all_negative(const std::vector<GershgorinDisc>& discs);

/// Gaussian elimination with partial pivoting. Throws std::runtime_error on singular input.
std::vector<double> solve(DenseMatrix a, std::vector<double> b);

}  // namespace oncolattice

#endif  // ONCOLATTICE_LINALG_HPP
