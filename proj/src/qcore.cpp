#include "rootnot/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rootnot {

double wrap_phase(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative number plus 2pi can round up to exactly 2pi.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double reflect_polar(double angle) {
  // Reflecting at 0 and pi is a fold of the 2pi-periodic triangle wave.
  double r = std::fabs(angle);
  r = std::fmod(r, kTwoPi);
  if (r > kPi) r = kTwoPi - r;
  return std::clamp(r, 0.0, kPi);
}

EulerAngles EulerAngles::normalized(double beta, double delta, double gamma) {
  return {wrap_phase(beta), wrap_phase(delta), reflect_polar(gamma)};
}

bool EulerAngles::valid() const {
  auto in_phase = [](double a) { return std::isfinite(a) && a >= 0.0 && a < kTwoPi; };
  return in_phase(beta) && in_phase(delta) && std::isfinite(gamma) && gamma >= 0.0 &&
         gamma <= kPi;
}

Unitary2 Unitary2::operator*(const Unitary2 &rhs) const {
  const auto &a = *this;
  return {a(0, 0) * rhs(0, 0) + a(0, 1) * rhs(1, 0), a(0, 0) * rhs(0, 1) + a(0, 1) * rhs(1, 1),
          a(1, 0) * rhs(0, 0) + a(1, 1) * rhs(1, 0), a(1, 0) * rhs(0, 1) + a(1, 1) * rhs(1, 1)};
}

Unitary2 Unitary2::scaled(Complex factor) const {
  Unitary2 out = *this;
  for (auto &z : out.m_) z *= factor;
  return out;
}

double Unitary2::unitarity_deviation() const {
  double worst = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Complex dot = std::conj((*this)(0, i)) * (*this)(0, j) + std::conj((*this)(1, i)) * (*this)(1, j);
      if (i == j) dot -= 1.0;
      worst = std::max(worst, std::abs(dot));
    }
  }
  return worst;
}

double Unitary2::max_abs_difference(const Unitary2 &other) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(m_[i] - other.m_[i]));
  return worst;
}

Unitary2 euler_to_unitary(const EulerAngles &angles) {
  const double half_sum = 0.5 * (angles.beta + angles.delta);
  const double half_diff = 0.5 * (angles.beta - angles.delta);
  const double c = std::cos(0.5 * angles.gamma);
  const double s = std::sin(0.5 * angles.gamma);
  return {std::polar(c, -half_sum), -std::polar(s, -half_diff), std::polar(s, half_diff),
          std::polar(c, half_sum)};
}

EulerAngles haar_random_angles(RandomStream &rng) {
  const double beta = kTwoPi * uniform01(rng);
  const double delta = kTwoPi * uniform01(rng);
  const double cos_gamma = 1.0 - 2.0 * uniform01(rng);  // (-1, 1]
  return {beta, delta, std::acos(cos_gamma)};
}

Unitary2 unitary_power(const Unitary2 &u, std::uint64_t n) {
  Unitary2 result = Unitary2::identity();
  Unitary2 base = u;
  while (n > 0) {
    if (n & 1u) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

double transition_prob(const Unitary2 &u, int a, int b) {
  if ((a != 0 && a != 1) || (b != 0 && b != 1)) {
    throw std::invalid_argument("transition_prob: basis labels must be 0 or 1");
  }
  return std::norm(u(b, a));
}

bool is_power_of_two_root(int k) { return k >= 2 && (k & (k - 1)) == 0; }

void require_power_of_two_root(int k) {
  if (!is_power_of_two_root(k)) {
    throw std::invalid_argument("k must be a power of two >= 2, got " + std::to_string(k));
  }
}

Unitary2 exact_root_unitary(int k) {
  require_power_of_two_root(k);
  const double theta = kPi / (2.0 * k);
  const Complex c = std::cos(theta);
  const Complex mis = Complex(0.0, -std::sin(theta));
  return {c, mis, mis, c};
}

EulerAngles exact_root_angles(int k) {
  require_power_of_two_root(k);
  // beta = -pi/2, delta = pi/2 gives the sigma_x axis; wrapping beta to 3pi/2
  // flips the overall sign only.
  return EulerAngles::normalized(-0.5 * kPi, 0.5 * kPi, kPi / k);
}

}  // namespace rootnot
