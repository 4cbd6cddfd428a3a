// SPDX-License-Identifier: Apache-2.0
#include "qst/estimator.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qst/noise.hpp"

namespace qst {

namespace {

// Where each of t1..t16 sits in T and whether it feeds the imaginary part.
struct ParamSlot {
  int row;
  int col;
  bool imag;
};

constexpr std::array<ParamSlot, 16> kSlots{{
    {0, 0, false},  // t1
    {1, 1, false},  // t2
    {2, 2, false},  // t3
    {3, 3, false},  // t4
    {1, 0, false},  // t5
    {1, 0, true},   // t6
    {2, 1, false},  // t7
    {2, 1, true},   // t8
    {3, 2, false},  // t9
    {3, 2, true},   // t10
    {2, 0, false},  // t11
    {2, 0, true},   // t12
    {3, 1, false},  // t13
    {3, 1, true},   // t14
    {3, 0, false},  // t15
    {3, 0, true},   // t16
}};

using Vec16 = Eigen::Matrix<double, 16, 1>;
using Mat16 = Eigen::Matrix<double, 16, 16>;
using Jac = Eigen::Matrix<double, Eigen::Dynamic, 16>;

Mat4 build_factor(const Vec16& t) {
  Mat4 T = Mat4::Zero();
  for (int j = 0; j < 16; ++j) {
    const ParamSlot& sl = kSlots[j];
    Complex& e = T(sl.row, sl.col);
    e += sl.imag ? Complex(0.0, t(j)) : Complex(t(j), 0.0);
  }
  return T;
}

Vec16 to_vec(const CholeskyParams& p) {
  Vec16 t;
  for (int j = 0; j < 16; ++j) t(j) = p.t[j];
  return t;
}

CholeskyParams to_params(const Vec16& t) {
  CholeskyParams p;
  for (int j = 0; j < 16; ++j) p.t[j] = t(j);
  return p;
}

// Least-squares problem over the 16 Cholesky parameters. Predictions never
// materialize rho: p^E_k = ||T xi_k||^2 / ||T||_F^2.
class LsProblem {
 public:
  LsProblem(const Frame& frame, const std::vector<double>& measured)
      : frame_(frame), measured_(measured), n_(frame.size()) {
    if (static_cast<int>(measured.size()) != n_) {
      std::ostringstream msg;
      msg << "measured list has " << measured.size() << " entries; frame "
          << frame.name << " has " << n_;
      throw std::invalid_argument(msg.str());
    }
  }

  int n() const { return n_; }

  double value(const Vec16& t) const {
    const Mat4 T = build_factor(t);
    const double s = T.squaredNorm();
    if (!(s > 0.0) || !std::isfinite(s))
      return std::numeric_limits<double>::infinity();
    double f = 0.0;
    for (int k = 0; k < n_; ++k) {
      const double r =
          (T * frame_.vectors[k]).squaredNorm() / s - measured_[k];
      f += r * r;
    }
    return f;
  }

  // Residuals r_k = p^E_k - m_k and Jacobian d p^E_k / d t_j. Returns f.
  double eval(const Vec16& t, Eigen::VectorXd& resid, Jac& jac) const {
    const Mat4 T = build_factor(t);
    const double s = T.squaredNorm();
    if (!(s > 0.0))
      throw std::invalid_argument("objective: degenerate parametrization");

    // d s / d t_j
    Vec16 ds;
    for (int j = 0; j < 16; ++j) {
      const ParamSlot& sl = kSlots[j];
      const Complex e = T(sl.row, sl.col);
      ds(j) = 2.0 * (sl.imag ? e.imag() : e.real());
    }

    const double inv_s = 1.0 / s;
    const double inv_s2 = inv_s * inv_s;
    double f = 0.0;
    for (int k = 0; k < n_; ++k) {
      const Vec4& xi = frame_.vectors[k];
      const Vec4 y = T * xi;
      const double q = y.squaredNorm();
      const double r = q * inv_s - measured_[k];
      resid(k) = r;
      f += r * r;
      for (int j = 0; j < 16; ++j) {
        const ParamSlot& sl = kSlots[j];
        // d q_k / d t_j = 2 Re(conj(y_r) w xi_c), w = 1 or i
        const Complex z = std::conj(y(sl.row)) * xi(sl.col);
        const double dq = 2.0 * (sl.imag ? -z.imag() : z.real());
        jac(k, j) = (dq * s - q * ds(j)) * inv_s2;
      }
    }
    return f;
  }

 private:
  const Frame& frame_;
  const std::vector<double>& measured_;
  int n_;
};

struct RestartOutcome {
  Vec16 t = Vec16::Zero();
  double f = std::numeric_limits<double>::infinity();
  int iters = 0;
  bool converged = false;
};

RestartOutcome lm_minimize(const LsProblem& prob, Vec16 t,
                           const ReconstructOptions& opt) {
  Eigen::VectorXd resid(prob.n());
  Jac jac(prob.n(), 16);
  double f = prob.eval(t, resid, jac);

  double lambda = 1e-3;
  int iter = 0;
  bool converged = false;
  while (iter < opt.max_iters) {
    ++iter;
    const Vec16 jtr = jac.transpose() * resid;
    if ((2.0 * jtr).norm() < opt.grad_tol) {
      converged = true;
      break;
    }
    Mat16 normal = jac.transpose() * jac;
    // Uniform damping: J^T J is rank-deficient whenever the frame has fewer
    // than 16 elements (and always along the scale gauge), so per-coordinate
    // diag scaling would leak unbounded null-space steps as lambda shrinks.
    const double scale = std::max(normal.diagonal().maxCoeff(), 1e-12);
    normal.diagonal().array() += lambda * scale;
    const Eigen::LDLT<Mat16> ldlt(normal);
    const Vec16 step = ldlt.solve(-jtr);
    const bool solvable =
        ldlt.info() == Eigen::Success && step.allFinite();
    const double f_trial =
        solvable ? prob.value(t + step)
                 : std::numeric_limits<double>::infinity();
    if (f_trial < f) {
      const double decrease = f - f_trial;
      t += step;
      f = prob.eval(t, resid, jac);
      lambda = std::max(lambda * 0.3, 1e-9);
      if (decrease < opt.f_tol) {
        converged = true;
        break;
      }
    } else {
      lambda *= 7.0;
      if (lambda > 1e12) break;  // stalled
    }
  }
  if (!converged && (2.0 * (jac.transpose() * resid)).norm() < opt.grad_tol)
    converged = true;

  return RestartOutcome{t, f, iter, converged};
}

}  // namespace

DensityMatrix4::DensityMatrix4(const Mat4& m) : mat_(m) {
  const double viol = hermiticity_violation(m);
  if (viol > kHermTol) {
    std::ostringstream msg;
    msg << "DensityMatrix4: Hermiticity violation " << viol;
    throw std::invalid_argument(msg.str());
  }
  const double trace_err = std::abs(m.trace().real() - 1.0) +
                           std::abs(m.trace().imag());
  if (trace_err > kHermTol) {
    std::ostringstream msg;
    msg << "DensityMatrix4: trace deviates from 1 by " << trace_err;
    throw std::invalid_argument(msg.str());
  }
  const HermEig eig = herm_eig(m);
  if (eig.values.minCoeff() < -kEigClipTol) {
    std::ostringstream msg;
    msg << "DensityMatrix4: negative eigenvalue " << eig.values.minCoeff();
    throw std::invalid_argument(msg.str());
  }
}

Mat4 cholesky_factor(const CholeskyParams& p) {
  return build_factor(to_vec(p));
}

DensityMatrix4 density_from_params(const CholeskyParams& p) {
  const Mat4 T = cholesky_factor(p);
  const double s = T.squaredNorm();
  if (!(s > 0.0))
    throw std::invalid_argument(
        "density_from_params: degenerate parametrization (all t zero)");
  return DensityMatrix4(Mat4((T.adjoint() * T) / s));
}

double predicted_probability(const Vec4& frame_vector,
                             const DensityMatrix4& rho) {
  const Complex val = frame_vector.dot(rho.mat() * frame_vector);
  return std::clamp(val.real(), 0.0, 1.0);
}

double objective(const CholeskyParams& p, const Frame& frame,
                 const std::vector<double>& measured) {
  const LsProblem prob(frame, measured);
  const double f = prob.value(to_vec(p));
  if (!std::isfinite(f))
    throw std::invalid_argument("objective: degenerate parametrization");
  return f;
}

std::array<double, 16> objective_gradient(const CholeskyParams& p,
                                          const Frame& frame,
                                          const std::vector<double>& measured) {
  const LsProblem prob(frame, measured);
  Eigen::VectorXd resid(prob.n());
  Jac jac(prob.n(), 16);
  prob.eval(to_vec(p), resid, jac);
  const Vec16 g = 2.0 * (jac.transpose() * resid);
  std::array<double, 16> out;
  for (int j = 0; j < 16; ++j) out[j] = g(j);
  return out;
}

FitResult reconstruct(const Frame& frame, const std::vector<double>& measured,
                      const ReconstructOptions& options) {
  if (options.restarts < 1)
    throw std::invalid_argument("reconstruct: restarts must be >= 1");
  if (options.max_iters < 1)
    throw std::invalid_argument("reconstruct: max_iters must be >= 1");
  const LsProblem prob(frame, measured);

  RestartOutcome best;
  int used = 0;
  for (int restart = 0; restart < options.restarts; ++restart) {
    ++used;
    RngStream rng(options.seed, static_cast<std::uint64_t>(restart));
    Vec16 t0;
    do {
      for (int j = 0; j < 16; ++j) t0(j) = rng.uniform(-1.0, 1.0);
    } while (t0.squaredNorm() < 1e-12);

    const RestartOutcome out = lm_minimize(prob, t0, options);
    if (out.f < best.f) best = out;  // earliest restart wins ties
    if (best.converged && best.f <= 1e-20) break;  // perfect fit reached
  }

  return FitResult{density_from_params(to_params(best.t)), best.f, best.iters,
                   used, best.converged};
}

}  // namespace qst
