#pragma once

#include <array>
#include <complex>
#include <cstdint>

#include "rootnot/random.hpp"

namespace rootnot {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Position of the walker in parameter space. The global phase is not
// stored; it never affects a measured probability.
struct EulerAngles {
  double beta = 0.0;   // [0, 2pi)
  double delta = 0.0;  // [0, 2pi)
  double gamma = 0.0;  // [0, pi]

  // Wraps beta/delta modulo 2pi and reflects gamma into [0, pi].
  static EulerAngles normalized(double beta, double delta, double gamma);

  bool valid() const;
  friend bool operator==(const EulerAngles &, const EulerAngles &) = default;
};

double wrap_phase(double angle);
double reflect_polar(double angle);

// 2x2 complex matrix, row-major: (0,0) (0,1) (1,0) (1,1).
class Unitary2 {
 public:
  Unitary2() = default;
  constexpr Unitary2(Complex a00, Complex a01, Complex a10, Complex a11)
      : m_{a00, a01, a10, a11} {}

  static Unitary2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Unitary2 pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }

  const Complex &operator()(int row, int col) const { return m_[2 * row + col]; }
  Complex &operator()(int row, int col) { return m_[2 * row + col]; }

  Unitary2 operator*(const Unitary2 &rhs) const;
  Unitary2 scaled(Complex factor) const;

  // max |(U^dagger U - I)_ij|
  double unitarity_deviation() const;
  double max_abs_difference(const Unitary2 &other) const;

 private:
  std::array<Complex, 4> m_{};
};

// Euler parameterization with the global phase set to 0.
Unitary2 euler_to_unitary(const EulerAngles &angles);

// beta, delta uniform on [0, 2pi); cos(gamma) uniform on [-1, 1].
EulerAngles haar_random_angles(RandomStream &rng);

// Binary exponentiation over explicit 2x2 products; n = 0 gives identity.
Unitary2 unitary_power(const Unitary2 &u, std::uint64_t n);

// |<b|U|a>|^2
double transition_prob(const Unitary2 &u, int a, int b);

// cos(pi/2k) I - i sin(pi/2k) sigma_x. Throws std::invalid_argument unless
// k is a power of two >= 2.
Unitary2 exact_root_unitary(int k);
// Euler angles reproducing exact_root_unitary(k) up to a global sign.
EulerAngles exact_root_angles(int k);

bool is_power_of_two_root(int k);  // k = 2^m, m >= 1
void require_power_of_two_root(int k);

}  // namespace rootnot
