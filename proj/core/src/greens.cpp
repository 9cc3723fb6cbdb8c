#include "cmvweyl/greens.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "cmvweyl/errors.hpp"
#include "cmvweyl/spectral.hpp"
#include "cmvweyl/transfer.hpp"

namespace cmv {

namespace {

bool site_odd(int k) { return ((k % 2) + 2) % 2 == 1; }

void require_resolvent_point(Complex z) {
  if (z == Complex(0.0)) throw DomainError("resolvent formulas need z != 0");
  if (std::abs(std::abs(z) - 1.0) < 1e-12)
    throw DomainError("resolvent point in the pole region |z| = 1");
}

// Upper branch: k < k' or k = k' odd.
bool upper_branch(int k, int kp) {
  return k < kp || (k == kp && site_odd(k));
}

}  // namespace

Eigen::MatrixXcd half_lattice_resolvent_block(const VerblunskySequence& seq,
                                              int k0, Complex z, int lo,
                                              int hi, Side side, int n_ctx) {
  require_resolvent_point(z);
  if (lo > hi) throw DomainError("empty index window");
  if (side == Side::plus && lo < k0)
    throw DomainError("plus-side resolvent index below k0");
  if (side == Side::minus && hi > k0)
    throw DomainError("minus-side resolvent index above k0");

  const BandedUnitary trunc = build_half_lattice(seq, k0, 0.0, n_ctx, side);
  const CircleMeasure mu = measure_from_operator(trunc, k0);
  const Complex m =
      side == Side::plus ? mu.herglotz(z) : -mu.herglotz(z);

  const SolutionFamily fam(seq, k0, std::min(lo, k0), std::max(hi, k0), side);
  const WeylPairSamples weyl = weyl_pair_samples(seq, fam, z, m, side, lo, hi);
  const Complex tilde_scale = fam.tilde_divided() ? 1.0 / z : Complex(1.0);
  const int n = hi - lo + 1;
  // poly(k): tilde p / p on the polynomial slot; weyl(k): the l^2 combination.
  std::vector<Complex> poly_first(static_cast<std::size_t>(n));
  std::vector<Complex> poly_second(static_cast<std::size_t>(n));
  std::vector<Complex> weyl_first(static_cast<std::size_t>(n));
  std::vector<Complex> weyl_second(static_cast<std::size_t>(n));
  for (int k = lo; k <= hi; ++k) {
    const std::size_t i = static_cast<std::size_t>(k - lo);
    poly_first[i] = fam.p_tilde(k).eval(z);
    poly_second[i] = fam.r(k).eval(z);
    weyl_first[i] = tilde_scale * weyl.at_u(k);
    weyl_second[i] = weyl.at_v(k);
  }

  Eigen::MatrixXcd g(n, n);
  const Complex pref = 1.0 / (2.0 * z);
  for (int k = lo; k <= hi; ++k) {
    for (int kp = lo; kp <= hi; ++kp) {
      const std::size_t i = static_cast<std::size_t>(k - lo);
      const std::size_t j = static_cast<std::size_t>(kp - lo);
      Complex val;
      if (side == Side::plus) {
        val = upper_branch(k, kp) ? poly_first[i] * weyl_second[j]
                                  : poly_second[j] * weyl_first[i];
      } else {
        val = upper_branch(k, kp) ? weyl_first[i] * poly_second[j]
                                  : weyl_second[j] * poly_first[i];
      }
      g(k - lo, kp - lo) = pref * val;
    }
  }
  return g;
}

Complex half_lattice_resolvent(const VerblunskySequence& seq, int k0,
                               Complex z, int k, int kp, Side side,
                               int n_ctx) {
  const int lo = std::min(k, kp), hi = std::max(k, kp);
  const Eigen::MatrixXcd g =
      half_lattice_resolvent_block(seq, k0, z, lo, hi, side, n_ctx);
  return g(k - lo, kp - lo);
}

namespace {

// u_{+-} = tilde q_+ + M tilde p_+, v_{+-} = s_+ + M r_+ over [lo, hi],
// with the tail decaying toward `decay` rebuilt stably.
WeylPairSamples tilde_weyl_pair(const VerblunskySequence& seq,
                                const SolutionFamily& fam, Complex z,
                                Complex big_m, Side decay, int lo, int hi) {
  WeylPairSamples w = weyl_pair_samples(seq, fam, z, big_m, decay, lo, hi);
  if (fam.tilde_divided())
    for (auto& u : w.u) u /= z;
  return w;
}

}  // namespace

Eigen::MatrixXcd full_lattice_green_block(const VerblunskySequence& seq,
                                          int k0, Complex z, int lo, int hi,
                                          int n_ctx) {
  require_resolvent_point(z);
  const MFunctionContext ctx(seq, k0, n_ctx);
  const Complex mp = big_M(ctx, z, Side::plus);
  const Complex mm = big_M(ctx, z, Side::minus);
  if (std::abs(mp - mm) < 1e-13)
    throw SingularError("M_+ = M_- in full-lattice Green's function");

  const SolutionFamily fam(seq, k0, std::min(lo, k0), std::max(hi, k0),
                           Side::plus);
  const WeylPairSamples wp =
      tilde_weyl_pair(seq, fam, z, mp, Side::plus, lo, hi);
  const WeylPairSamples wm =
      tilde_weyl_pair(seq, fam, z, mm, Side::minus, lo, hi);

  const Complex pref = -1.0 / (2.0 * z * (mp - mm));
  const int n = hi - lo + 1;
  Eigen::MatrixXcd g(n, n);
  for (int k = lo; k <= hi; ++k)
    for (int kp = lo; kp <= hi; ++kp)
      g(k - lo, kp - lo) =
          pref * (upper_branch(k, kp) ? wm.at_u(k) * wp.at_v(kp)
                                      : wm.at_v(kp) * wp.at_u(k));
  return g;
}

Complex full_lattice_green(const VerblunskySequence& seq, int k0, Complex z,
                           int k, int kp, int n_ctx) {
  const int lo = std::min(k, kp), hi = std::max(k, kp);
  const Eigen::MatrixXcd g =
      full_lattice_green_block(seq, k0, z, lo, hi, n_ctx);
  return g(k - lo, kp - lo);
}

Complex weyl_wronskian(const VerblunskySequence& seq, int k0, Complex z,
                       int k1, int n_ctx) {
  require_resolvent_point(z);
  const MFunctionContext ctx(seq, k0, n_ctx);
  const Complex mp = big_M(ctx, z, Side::plus);
  const Complex mm = big_M(ctx, z, Side::minus);
  const SolutionFamily fam(seq, k0, std::min(k1, k0), std::max(k1, k0),
                           Side::plus);
  const WeylPairSamples wp =
      tilde_weyl_pair(seq, fam, z, mp, Side::plus, k1, k1);
  const WeylPairSamples wm =
      tilde_weyl_pair(seq, fam, z, mm, Side::minus, k1, k1);
  return wp.at_u(k1) * wm.at_v(k1) - wm.at_u(k1) * wp.at_v(k1);
}

namespace {

struct StoneIntegrand {
  const Eigen::MatrixXcd* mat;
  const Eigen::VectorXcd* f;
  const Eigen::VectorXcd* g;
  const std::function<Complex(double)>* big_f;
  double r;

  Complex cayley(Complex z) const {
    const Eigen::Index n = mat->rows();
    const Eigen::MatrixXcd a =
        *mat - z * Eigen::MatrixXcd::Identity(n, n);
    const Eigen::VectorXcd x = a.partialPivLu().solve(*g);
    return f->dot(*g + 2.0 * z * x);  // f^H (I + 2 z (U - z)^{-1}) g
  }

  Complex operator()(double theta) const {
    const Complex inner = cayley(std::polar(r, theta));
    const Complex outer = cayley(std::polar(1.0 / r, theta));
    return (*big_f)(theta) * (inner - outer) / (4.0 * kPi);
  }
};

Complex adaptive_panel(const StoneIntegrand& h, double a, double b,
                       Complex ha, Complex hm, Complex hb, double tol,
                       int depth) {
  const double m = 0.5 * (a + b);
  const Complex hl = h(0.5 * (a + m));
  const Complex hr = h(0.5 * (m + b));
  const Complex coarse = (b - a) / 6.0 * (ha + 4.0 * hm + hb);
  const Complex fine = (b - a) / 12.0 * (ha + 4.0 * hl + 2.0 * hm + 4.0 * hr + hb);
  if (depth <= 0 || std::abs(fine - coarse) < tol) return fine;
  return adaptive_panel(h, a, m, ha, hl, hm, 0.5 * tol, depth - 1) +
         adaptive_panel(h, m, b, hm, hr, hb, 0.5 * tol, depth - 1);
}

}  // namespace

StoneReport stone_projection_check(
    const BandedUnitary& u, const Eigen::VectorXcd& f,
    const Eigen::VectorXcd& g, double theta1, double theta2,
    const std::function<Complex(double)>& big_f,
    const std::vector<double>& r_schedule,
    const std::vector<double>& delta_schedule, int base_panels) {
  if (!(theta2 > theta1) || theta2 - theta1 > kTwoPi + 1e-15)
    throw DomainError("arc must satisfy theta1 < theta2 <= theta1 + 2 pi");
  if (u.unitarity_residual() > 1e-8)
    throw PreconditionError("stone check needs a unitary matrix");

  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u.mat);
  const Eigen::VectorXcd lambda = schur.matrixT().diagonal();
  const Eigen::MatrixXcd vecs = schur.matrixU();
  const int n = u.size();
  const double width = theta2 - theta1;

  // Endpoint collision guard: the delta shift exists to dodge eigenangles,
  // so a collision of the shifted or raw endpoints is an ill-posed request.
  for (int j = 0; j < n; ++j) {
    const double phi = std::arg(lambda(j));
    for (double end : {theta1, theta2}) {
      double d = std::abs(wrap_angle(phi - end));
      d = std::min(d, kTwoPi - d);
      if (d < 1e-8)
        throw DomainError("arc endpoint collides with an eigenangle");
      for (double delta : delta_schedule) {
        double ds = std::abs(wrap_angle(phi - (end + delta)));
        ds = std::min(ds, kTwoPi - ds);
        if (ds < 1e-8)
          throw DomainError("shifted arc endpoint collides with an eigenangle");
      }
    }
  }

  StoneReport report;
  report.projection = Complex(0.0);
  const bool full_circle = width >= kTwoPi - 1e-15;
  for (int j = 0; j < n; ++j) {
    const double rel = wrap_angle(std::arg(lambda(j)) - theta1);
    const bool inside = full_circle || (rel > 0.0 && rel <= width);
    if (!inside) continue;
    const Complex fv = f.dot(vecs.col(j));
    const Complex vg = vecs.col(j).dot(g);
    report.projection += big_f(std::arg(lambda(j))) * fv * vg;
  }

  for (double r : r_schedule) {
    for (double delta : delta_schedule) {
      StoneIntegrand h{&u.mat, &f, &g, &big_f, r};
      const double a = theta1 + delta;
      const double b = theta2 + delta;
      const double panel_tol = 1e-9;
      Complex total(0.0);
      const double step = (b - a) / base_panels;
      Complex left = h(a);
      for (int i = 0; i < base_panels; ++i) {
        const double pa = a + i * step;
        const double pb = pa + step;
        const Complex mid = h(0.5 * (pa + pb));
        const Complex right = h(pb);
        total += adaptive_panel(h, pa, pb, left, mid, right, panel_tol, 24);
        left = right;
      }
      StoneSchedulePoint pt;
      pt.r = r;
      pt.delta = delta;
      pt.quadrature = total;
      pt.residual = std::abs(total - report.projection);
      report.points.push_back(pt);
    }
  }
  if (!report.points.empty())
    report.final_residual = report.points.back().residual;
  return report;
}

}  // namespace cmv
