#pragma once

#include <cmath>

#include "lamglass/model.hpp"

namespace lamglass {

/// Reissner generalized strain measures of one element: normal strain,
/// shear strain and pseudo-curvature. All three vanish in the undeformed
/// configuration and under superposed rigid-body motion.
struct GeneralizedStrain {
  double epsilon = 0.0;  ///< dimensionless
  double gamma = 0.0;    ///< dimensionless
  double kappa = 0.0;    ///< [1/m]
};

/// Nodal unknowns of a two-node element: axial displacement, deflection and
/// cross-section rotation at both ends, plus the element length.
struct ElementDofs {
  double u1 = 0.0, w1 = 0.0, phi1 = 0.0;
  double u2 = 0.0, w2 = 0.0, phi2 = 0.0;
  double length = 0.0;  ///< L_e [m], > 0

  double delta_u() const { return u2 - u1; }
  double delta_w() const { return w2 - w1; }
  double delta_phi() const { return phi2 - phi1; }
  double mean_rotation() const { return 0.5 * (phi1 + phi2); }  // beta_e
};

/// Finite-strain measures, element-wise constant (selective one-point
/// integration at the element midpoint):
///   eps   = ((L_e + du) cos(beta) - dw sin(beta)) / L_e - 1
///   gamma = ((L_e + du) sin(beta) + dw cos(beta)) / L_e
///   kappa = dphi / L_e
inline GeneralizedStrain strain_nonlinear(const ElementDofs& d) {
  const double le = d.length;
  const double beta = d.mean_rotation();
  const double cb = std::cos(beta);
  const double sb = std::sin(beta);
  GeneralizedStrain s;
  s.epsilon = ((le + d.delta_u()) * cb - d.delta_w() * sb) / le - 1.0;
  s.gamma = ((le + d.delta_u()) * sb + d.delta_w() * cb) / le;
  s.kappa = d.delta_phi() / le;
  return s;
}

/// Linearized measures: eps = du/L_e, gamma = beta + dw/L_e, kappa = dphi/L_e.
inline GeneralizedStrain strain_linear(const ElementDofs& d) {
  GeneralizedStrain s;
  s.epsilon = d.delta_u() / d.length;
  s.gamma = d.mean_rotation() + d.delta_w() / d.length;
  s.kappa = d.delta_phi() / d.length;
  return s;
}

struct DeformedPoint {
  double x = 0.0;
  double z = 0.0;
};

/// Deformed position of the cross-section point (X, Z) given the centerline
/// field values u, w, phi at X:
///   x = O_X + X + u + sin(phi) Z,   z = O_Z + w + cos(phi) Z.
/// Z and w are positive downward. Throws when X lies outside [0, L].
inline DeformedPoint deformed_position(const LayerGeometry& geometry, double X, double Z,
                                       double u, double w, double phi) {
  if (X < 0.0 || X > geometry.length) {
    throw ValidationError("X = " + std::to_string(X) + " m lies outside the layer [0, " +
                          std::to_string(geometry.length) + "]");
  }
  DeformedPoint p;
  p.x = geometry.origin_x + X + u + std::sin(phi) * Z;
  p.z = geometry.origin_z.value_or(0.0) + w + std::cos(phi) * Z;
  return p;
}

/// Same map with the fields interpolated linearly from the nodal dofs;
/// x_local runs over [0, L_e].
inline DeformedPoint deformed_position(const LayerGeometry& geometry, const ElementDofs& d,
                                       double x_local, double Z) {
  const double n2 = x_local / d.length;
  const double n1 = 1.0 - n2;
  return deformed_position(geometry, x_local, Z, n1 * d.u1 + n2 * d.u2, n1 * d.w1 + n2 * d.w2,
                           n1 * d.phi1 + n2 * d.phi2);
}

/// Biot strain components at one cross-section point.
struct BiotStrain {
  double h11 = 0.0;
  double h21 = 0.0;
};

/// Numeric Biot strain (H11, H21) at the element midpoint and height Z,
/// obtained from the full kinematic map: the deformation gradient is built by
/// central finite differences of deformed_position (step 1e-6 L_e) and the
/// rotation is removed through R(phi)^-1 F - I.
///
/// Verification utility for the analytic measures via H11 = eps + kappa Z and
/// H21 = gamma; it is not on the solve path. Requires |phi| < pi/2 at the
/// midpoint so the decomposition is unique.
inline BiotStrain biot_strain_oracle(const ElementDofs& d, double Z) {
  if (!(d.length > 0.0)) throw ValidationError("element length must be positive");
  const double step = 1e-6 * d.length;
  const double mid = 0.5 * d.length;
  if (mid + step == mid || step == 0.0) {
    throw ValidationError("finite-difference step underflow for L_e = " + std::to_string(d.length));
  }

  LayerGeometry local;
  local.origin_x = 0.0;
  local.origin_z = 0.0;
  local.length = d.length;

  const DeformedPoint xp = deformed_position(local, d, mid + step, Z);
  const DeformedPoint xm = deformed_position(local, d, mid - step, Z);
  const DeformedPoint zp = deformed_position(local, d, mid, Z + step);
  const DeformedPoint zm = deformed_position(local, d, mid, Z - step);

  const double f11 = (xp.x - xm.x) / (2.0 * step);
  const double f21 = (xp.z - xm.z) / (2.0 * step);
  const double f12 = (zp.x - zm.x) / (2.0 * step);
  const double f22 = (zp.z - zm.z) / (2.0 * step);

  // U = R^-1 F with R = [[cos, sin], [-sin, cos]] at the midpoint rotation.
  const double beta = d.mean_rotation();
  const double cb = std::cos(beta);
  const double sb = std::sin(beta);

  BiotStrain h;
  h.h11 = (cb * f11 - sb * f21) - 1.0;
  h.h21 = (sb * f11 + cb * f21);
  (void)f12;
  (void)f22;
  return h;
}

/// Extreme normal stresses at the top/bottom fibers and the section shear
/// stress recovered from element-wise constant strain measures.
struct StressTriple {
  double s_top = 0.0;  ///< [Pa]
  double s_bot = 0.0;  ///< [Pa]
  double t = 0.0;      ///< [Pa]
};

/// S_top = E (eps - kappa h / 2), S_bot = E (eps + kappa h / 2), T = G gamma.
/// With Z positive downward the bottom fiber is the tensile one under a
/// downward mid-span load.
inline StressTriple recover_stresses(const LayerSection& section, const GeneralizedStrain& s) {
  StressTriple r;
  const double half = 0.5 * s.kappa * section.thickness;
  r.s_top = section.young_modulus * (s.epsilon - half);
  r.s_bot = section.young_modulus * (s.epsilon + half);
  r.t = section.shear_modulus * s.gamma;
  return r;
}

}  // namespace lamglass
