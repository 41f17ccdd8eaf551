#pragma once

#include <cmath>

#include "lamglass/kinematics.hpp"
#include "lamglass/linalg.hpp"

namespace lamglass {

/// Element contribution to the internal energy,
///   1/2 (EA eps^2 + GA_s gamma^2 + EI kappa^2) L_e,
/// with the finite-strain measures evaluated at the element midpoint.
inline double internal_energy(const LayerSection& section, const ElementDofs& d) {
  const GeneralizedStrain s = strain_nonlinear(d);
  return 0.5 *
         (section.ea() * s.epsilon * s.epsilon + section.ga_s() * s.gamma * s.gamma +
          section.ei() * s.kappa * s.kappa) *
         d.length;
}

/// Internal nodal force vector, ordered (u1, w1, phi1, u2, w2, phi2).
/// Gradient of internal_energy; f4 = -f1 and f5 = -f2 hold identically.
inline Vector6 internal_force(const LayerSection& section, const ElementDofs& d) {
  const GeneralizedStrain s = strain_nonlinear(d);
  const double beta = d.mean_rotation();
  const double cb = std::cos(beta);
  const double sb = std::sin(beta);
  const double n = section.ea() * s.epsilon;
  const double q = section.ga_s() * s.gamma;
  const double m = section.ei() * s.kappa;

  Vector6 f;
  f(0) = -n * cb - q * sb;
  f(1) = n * sb - q * cb;
  f(2) = -0.5 * (d.length + d.delta_u()) * f(1) + 0.5 * d.delta_w() * f(0) - m;
  f(3) = -f(0);
  f(4) = -f(1);
  f(5) = -0.5 * (d.length + d.delta_u()) * f(1) + 0.5 * d.delta_w() * f(0) + m;
  return f;
}

/// Consistent tangent stiffness, the Jacobian of internal_force. Assembled
/// from the seven distinct entries K11, K12, K13, K22, K23, K33, K36; the
/// result is exactly symmetric and repeats the +/- block pattern of the
/// internal force structure.
inline Matrix6 tangent_stiffness(const LayerSection& section, const ElementDofs& d) {
  const GeneralizedStrain s = strain_nonlinear(d);
  const double beta = d.mean_rotation();
  const double cb = std::cos(beta);
  const double sb = std::sin(beta);
  const double ea = section.ea();
  const double gas = section.ga_s();
  const double ei = section.ei();
  const double le = d.length;

  const double k11 = (ea * cb * cb + gas * sb * sb) / le;
  const double k12 = 0.5 * (gas - ea) * std::sin(2.0 * beta) / le;
  const double k13 = 0.5 * ((ea - gas) * (s.epsilon * sb + s.gamma * cb) - gas * sb);
  const double k22 = (ea * sb * sb + gas * cb * cb) / le;
  const double k23 = 0.5 * ((ea - gas) * (s.epsilon * cb - s.gamma * sb) - gas * cb);
  const double k33 = 0.5 * (-(le + d.delta_u()) * k23 + d.delta_w() * k13) + ei / le;
  const double k36 = k33 - 2.0 * ei / le;

  Matrix6 k;
  k << k11, k12, k13, -k11, -k12, k13,
       k12, k22, k23, -k12, -k22, k23,
       k13, k23, k33, -k13, -k23, k36,
      -k11, -k12, -k13, k11, k12, -k13,
      -k12, -k22, -k23, k12, k22, -k23,
       k13, k23, k36, -k13, -k23, k33;
  return k;
}

/// Consistent nodal loads of one element under a constant transverse
/// intensity f_z [N/m]: half goes to each node's deflection component.
/// Concentrated nodal forces are added directly to the global load vector
/// at assembly. Dead load: independent of the configuration.
inline Vector6 external_force(double f_z, double element_length) {
  Vector6 f = Vector6::Zero();
  f(1) = 0.5 * f_z * element_length;
  f(4) = 0.5 * f_z * element_length;
  return f;
}

}  // namespace lamglass
