#include "oncolattice/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oncolattice/roots.hpp"

namespace oncolattice {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Threshold-style verdict: margin > 0 means the stability inequality holds.
StabilityVerdict threshold_verdict(double margin, double max_real, std::string cond) {
  StabilityVerdict v;
  v.basis = VerdictBasis::Analytic;
  v.max_real_part = max_real;
  v.condition = std::move(cond);
  if (std::abs(margin) < kMarginalTol) v.kind = Stability::Marginal;
  else v.kind = margin > 0.0 ? Stability::Stable : Stability::Unstable;
  return v;
}

std::vector<std::complex<double>> eig2(double a, double b, double c, double d) {
  const double tr = a + d;
  const double det = a * d - b * c;
  const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr - 4.0 * det, 0.0));
  std::vector<std::complex<double>> ev{(tr + disc) / 2.0, (tr - disc) / 2.0};
  if (ev[0].real() < ev[1].real()) std::swap(ev[0], ev[1]);
  return ev;
}

}  // namespace

const char* to_string(Stability s) {
  switch (s) {
    case Stability::Stable: return "stable";
    case Stability::Unstable: return "unstable";
    case Stability::Marginal: return "marginal";
  }
  return "unknown";
}

const char* to_string(VerdictBasis b) {
  return b == VerdictBasis::Analytic ? "analytic" : "numeric_eigen";
}

const char* to_string(Kind2D k) {
  switch (k) {
    case Kind2D::Origin: return "Origin";
    case Kind2D::TumourOnly: return "TumourOnly";
    case Kind2D::InfectedOnly: return "InfectedOnly";
    case Kind2D::Coexistence: return "Coexistence";
  }
  return "unknown";
}

const char* to_string(Kind3D k) {
  switch (k) {
    case Kind3D::TumourFree: return "TumourFree";
    case Kind3D::TumourDominant: return "TumourDominant";
    case Kind3D::UninfectedFree: return "UninfectedFree";
    case Kind3D::Interior: return "Interior";
  }
  return "unknown";
}

StabilityVerdict verdict_from_max_real(double m, VerdictBasis basis, std::string condition) {
  StabilityVerdict v;
  v.basis = basis;
  v.max_real_part = m;
  v.condition = std::move(condition);
  if (m < -kMarginalTol) v.kind = Stability::Stable;
  else if (m > kMarginalTol) v.kind = Stability::Unstable;
  else v.kind = Stability::Marginal;
  return v;
}

StabilityVerdict numeric_verdict(const DenseMatrix& J) {
  return verdict_from_max_real(max_real_part(eigenvalues(J)), VerdictBasis::NumericEigen,
                               "max Re(eigenvalue)");
}

double infected_only_threshold(const ReducedParams& p) {
  if (!(p.r > p.gamma)) return kInf;
  return p.gamma * (p.alpha / (p.r - p.gamma) + 1.0 / p.r);
}

std::optional<SteadyState2D> coexistence_2d(const ReducedParams& p) {
  const double r = p.r, al = p.alpha, th = p.theta, ga = p.gamma;
  if (!(th > al * ga)) return std::nullopt;
  const double a = th - r * th + ga;
  const double b = th * th + al * th + 2.0 * al * ga - r * al * th - th;
  const double c0 = al * (al * ga - th);
  double y = -1.0;
  if (a == 0.0) {
    if (b != 0.0) y = -c0 / b;
  } else {
    const double disc = b * b - 4.0 * a * c0;
    if (disc < 0.0) return std::nullopt;
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    const double y1 = q / a;
    const double y2 = q != 0.0 ? c0 / q : -1.0;
    y = std::max(y1, y2);
  }
  if (!(y > 0.0)) return std::nullopt;
  const double x = 1.0 - y - th * y / (al + y);
  if (!(x > 0.0)) return std::nullopt;
  return SteadyState2D{Kind2D::Coexistence, x, y};
}

std::vector<Classified2D> classify_2d(const ReducedParams& p) {
  p.validate();
  std::vector<Classified2D> out;
  const double r = p.r, al = p.alpha, th = p.theta, ga = p.gamma;

  {
    Classified2D c;
    c.state = {Kind2D::Origin, 0.0, 0.0};
    c.eigenvalues = {1.0, r - ga};
    c.verdict = threshold_verdict(-1.0, 1.0, "eigenvalue 1 > 0");
    out.push_back(c);
  }
  {
    Classified2D c;
    c.state = {Kind2D::TumourOnly, 1.0, 0.0};
    const double lam = th / al - ga;
    c.eigenvalues = {-1.0, lam};
    std::sort(c.eigenvalues.begin(), c.eigenvalues.end(),
              [](auto a, auto b) { return a.real() > b.real(); });
    c.verdict = threshold_verdict(al * ga - th, std::max(-1.0, lam),
                                  th < al * ga ? "theta < alpha*gamma" : "theta > alpha*gamma");
    out.push_back(c);
  }
  const double bound = infected_only_threshold(p);
  if (r > ga) {
    Classified2D c;
    const double y = (r - ga) / r;
    c.state = {Kind2D::InfectedOnly, 0.0, y};
    const double lam1 = 1.0 - y - th * y / (al + y);
    c.eigenvalues = {lam1, ga - r};
    std::sort(c.eigenvalues.begin(), c.eigenvalues.end(),
              [](auto a, auto b) { return a.real() > b.real(); });
    c.verdict = threshold_verdict(th - bound, std::max(lam1, ga - r),
                                  th > bound ? "theta > gamma*(alpha/(r-gamma) + 1/r)"
                                             : "theta < gamma*(alpha/(r-gamma) + 1/r)");
    out.push_back(c);
  }
  if (auto co = coexistence_2d(p)) {
    Classified2D c;
    c.state = *co;
    const DenseMatrix J = jacobian_2d(co->x, co->y, p);
    c.eigenvalues = eig2(J(0, 0), J(0, 1), J(1, 0), J(1, 1));
    const double margin = std::min(th - al * ga, bound - th);
    c.verdict = threshold_verdict(margin, c.eigenvalues.front().real(),
                                  r > ga ? "alpha*gamma < theta < gamma*(alpha/(r-gamma) + 1/r)"
                                         : "alpha*gamma < theta (r <= gamma)");
    out.push_back(c);
  }
  return out;
}

Classified3D tumour_free_3d(const NondimParams& p) {
  Classified3D c;
  c.state.kind = Kind3D::TumourFree;
  c.state.z = 1.0;
  c.state.eigenvalues = {1.0, p.r - p.gamma.value_unchecked(1.0), -p.beta};
  std::sort(c.state.eigenvalues.begin(), c.state.eigenvalues.end(),
            [](auto a, auto b) { return a.real() > b.real(); });
  c.verdict = verdict_from_max_real(max_real_part(c.state.eigenvalues), VerdictBasis::Analytic,
                                    "eigenvalue 1 > 0");
  return c;
}

Classified3D tumour_dominant_3d(const NondimParams& p) {
  Classified3D c;
  c.state.kind = Kind3D::TumourDominant;
  c.state.x = 1.0;
  const double z = p.beta / (p.beta + p.q1);
  c.state.z = z;
  const double th = p.theta.value_unchecked(z);
  const double ga = p.gamma.value_unchecked(z);
  const double lam = th / p.alpha - ga;
  c.state.eigenvalues = {-1.0, lam, -p.beta - p.q1};
  std::sort(c.state.eigenvalues.begin(), c.state.eigenvalues.end(),
            [](auto a, auto b) { return a.real() > b.real(); });
  c.verdict = verdict_from_max_real(max_real_part(c.state.eigenvalues), VerdictBasis::Analytic,
                                    th < p.alpha * ga ? "theta(z*) < alpha*gamma(z*)"
                                                      : "theta(z*) > alpha*gamma(z*)");
  return c;
}

double uninfected_free_residual(double z, const NondimParams& p) {
  return p.gamma.value_unchecked(z) - p.r * (1.0 + p.beta / p.q2 - p.beta / (p.q2 * z));
}

std::vector<Classified3D> uninfected_free_3d(const NondimParams& p) {
  std::vector<double> zs;
  if (p.q2 == 0.0) {
    // oxygen decouples from y: z = 1
    zs.push_back(1.0);
  } else if (p.beta == 0.0) {
    return {};
  } else {
    const double lo = p.beta / (p.beta + p.q2);
    zs = scan_roots([&p](double z) { return uninfected_free_residual(z, p); }, lo, 1.0, 10000,
                    1e-12);
  }

  std::vector<Classified3D> out;
  for (double z : zs) {
    const double y = p.q2 == 0.0 ? 1.0 - p.gamma.value_unchecked(1.0) / p.r
                                 : (p.beta / p.q2) * (1.0 - z) / z;
    if (!(y > 1e-14) || !(y <= 1.0)) continue;
    Classified3D c;
    c.state.kind = Kind3D::UninfectedFree;
    c.state.y = y;
    c.state.z = z;
    const double th = p.theta.value_unchecked(z);
    const double dga = p.gamma.derivative_unchecked(z);
    const double lam1 = 1.0 - y - th * y / (p.alpha + y);
    const double s = p.beta + p.r * y * z;
    const std::complex<double> root =
        std::sqrt(std::complex<double>(s * s - 4.0 * z * (p.beta * p.r * y - dga * p.q2 * y * z * z), 0.0));
    c.state.eigenvalues = {lam1, (-s + root) / (2.0 * z), (-s - root) / (2.0 * z)};
    std::sort(c.state.eigenvalues.begin(), c.state.eigenvalues.end(),
              [](auto a, auto b) { return a.real() > b.real(); });
    std::string cond = lam1 < 0.0 ? "theta(z*) > (1-y*)(alpha+y*)/y*" : "theta(z*) <= (1-y*)(alpha+y*)/y*";
    cond += dga < p.beta * p.r / (p.q2 * z * z) ? "; gamma'(z*) < beta r/(q2 z*^2)"
                                                : "; gamma'(z*) >= beta r/(q2 z*^2)";
    c.verdict = verdict_from_max_real(max_real_part(c.state.eigenvalues), VerdictBasis::Analytic,
                                      std::move(cond));
    out.push_back(std::move(c));
  }
  if (out.size() > 1)
    for (auto& c : out) c.multiple_roots = true;
  return out;
}

std::optional<Classified3D> interior_3d(const NondimParams& p, const NondimState& guess) {
  std::vector<double> s{guess.x, guess.y, guess.z};
  for (int it = 0; it < 60; ++it) {
    const NondimState f = rhs_nondim({s[0], s[1], s[2]}, p);
    const double res = std::max({std::abs(f.x), std::abs(f.y), std::abs(f.z)});
    if (res < 1e-13) break;
    const DenseMatrix J = jacobian_3d({s[0], s[1], s[2]}, p);
    std::vector<double> dx;
    try {
      dx = solve(J, {f.x, f.y, f.z});
    } catch (const std::runtime_error&) {
      return std::nullopt;
    }
    for (int i = 0; i < 3; ++i) s[static_cast<std::size_t>(i)] -= dx[static_cast<std::size_t>(i)];
  }
  const NondimState f = rhs_nondim({s[0], s[1], s[2]}, p);
  if (std::max({std::abs(f.x), std::abs(f.y), std::abs(f.z)}) > 1e-10) return std::nullopt;
  if (!(s[0] > 1e-12 && s[1] > 1e-12 && s[2] > 0.0)) return std::nullopt;
  Classified3D c;
  c.state = {Kind3D::Interior, s[0], s[1], s[2], {}};
  const DenseMatrix J = jacobian_3d({s[0], s[1], s[2]}, p);
  c.state.eigenvalues = eigenvalues(J);
  c.verdict = numeric_verdict(J);
  return c;
}

}  // namespace oncolattice
