#include "reinhardt/forms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "reinhardt/errors.hpp"
#include "reinhardt/format.hpp"

namespace reinhardt {

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

// (1 - m1^2)^alpha extended past the unit circle by its limit value.
double fiber_weight(double m1, double alpha) {
  const double w = 1.0 - m1 * m1;
  if (w > 0.0) return std::pow(w, alpha);
  if (alpha > 0.0) return 0.0;
  if (alpha < 0.0) return kInfinity;
  return 1.0;
}

double upper_residual(double m2, double R, double wall) {
  if (std::isinf(R)) return -kInfinity;
  return m2 - R * wall;
}

double sanitize(double g) { return std::isnan(g) ? kInfinity : g; }

}  // namespace

NormalForm NormalForm::disc_fiber(double alpha, double R) {
  NormalForm nf{FormKind::DiscFiber, alpha, 0.0, 0.0, R};
  nf.validate();
  return nf;
}

NormalForm NormalForm::annulus_fiber(double alpha, double r, double R) {
  NormalForm nf{FormKind::AnnulusFiber, alpha, 0.0, r, R};
  nf.validate();
  return nf;
}

NormalForm NormalForm::punctured_fiber(double alpha, double R) {
  NormalForm nf{FormKind::PuncturedFiber, alpha, 0.0, 0.0, R};
  nf.validate();
  return nf;
}

NormalForm NormalForm::gaussian_annulus(double beta, double r, double R) {
  NormalForm nf{FormKind::GaussianAnnulus, 0.0, beta, r, R};
  nf.validate();
  return nf;
}

NormalForm NormalForm::gaussian_punctured(double beta, double R) {
  NormalForm nf{FormKind::GaussianPunctured, 0.0, beta, 0.0, R};
  nf.validate();
  return nf;
}

NormalForm NormalForm::make(int form_id, double alpha, double beta, double r, double R) {
  switch (form_id) {
    case 11: return disc_fiber(alpha, R);
    case 12: return annulus_fiber(alpha, r, R);
    case 13: return punctured_fiber(alpha, R);
    case 14: return gaussian_annulus(beta, r, R);
    case 15: return gaussian_punctured(beta, R);
    default: throw InputError("normalized form id must be one of 11..15, got " + std::to_string(form_id));
  }
}

void NormalForm::validate() const {
  const std::string tag = "form " + std::to_string(id()) + ": ";
  require(!std::isnan(R) && R > 0.0, tag + "R must be positive");
  if (over_disc()) {
    require(std::isfinite(alpha), tag + "alpha must be finite");
  } else {
    require(std::isfinite(beta) && beta != 0.0, tag + "beta must be finite and nonzero");
  }
  if (has_lower_wall()) {
    require(std::isfinite(r) && r > 0.0, tag + "r must be finite and positive");
    require(r < R, tag + "need r < R");
  } else {
    require(std::isfinite(R), tag + "R must be finite");
  }
}

std::string NormalForm::describe() const {
  std::string s = "form " + std::to_string(id()) + " (";
  if (over_disc()) {
    s += "alpha=" + format_number(alpha);
  } else {
    s += "beta=" + format_number(beta);
  }
  if (has_lower_wall()) s += ", r=" + format_number(r);
  s += ", R=" + format_number(R) + ")";
  return s;
}

double defining_function(const NormalForm& nf, ModulusPoint p) {
  const double m1 = p.m1;
  const double m2 = p.m2;
  const double disc = m1 * m1 - 1.0;
  double g = 0.0;
  switch (nf.kind) {
    case FormKind::DiscFiber: {
      const double w = fiber_weight(m1, nf.alpha);
      g = std::max(disc, m2 - nf.R * w);
      break;
    }
    case FormKind::AnnulusFiber: {
      const double w = fiber_weight(m1, nf.alpha);
      g = std::max({disc, nf.r * w - m2, upper_residual(m2, nf.R, w)});
      break;
    }
    case FormKind::PuncturedFiber: {
      const double w = fiber_weight(m1, nf.alpha);
      g = std::max({disc, -m2, m2 - nf.R * w});
      break;
    }
    case FormKind::GaussianAnnulus: {
      const double wall = std::exp(nf.beta * m1 * m1);
      g = std::max(nf.r * wall - m2, upper_residual(m2, nf.R, wall));
      break;
    }
    case FormKind::GaussianPunctured: {
      const double wall = std::exp(nf.beta * m1 * m1);
      g = std::max(-m2, m2 - nf.R * wall);
      break;
    }
  }
  return sanitize(g);
}

AxisFlags axis_intersections(const NormalForm& nf) {
  // Only form 11 admits z2 = 0; every form meets {z1 = 0} in a nonempty slice.
  return {true, nf.kind == FormKind::DiscFiber};
}

}  // namespace reinhardt
