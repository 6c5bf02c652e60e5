#include "homshift/specialfn.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "homshift/errors.hpp"
#include "homshift/repn.hpp"

namespace homshift {

namespace {

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

Complex lanczos_gamma(Complex z) {
  z -= 1.0;
  Complex series = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) series += kLanczos[k] / (z + static_cast<double>(k));
  const Complex t = z + kLanczosG + 0.5;
  const double log_sqrt_2pi = 0.91893853320467274178;
  return std::exp(log_sqrt_2pi + (z + 0.5) * std::log(t) - t) * series;
}

constexpr double kImagTolerance = 1e-12;

}  // namespace

Complex complex_gamma(Complex z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real())) {
    std::ostringstream msg;
    msg << "complex_gamma: pole at z = " << z.real();
    throw ParameterError(msg.str());
  }
  if (z.real() < 0.5) {
    const double pi = std::numbers::pi;
    return pi / (std::sin(pi * z) * lanczos_gamma(1.0 - z));
  }
  return lanczos_gamma(z);
}

NormSequence::NormSequence(TruncationWindow window, std::vector<double> values)
    : window_(window), values_(std::move(values)) {}

NormSequence norm_sq_sequence(const RepnParams& params, const TruncationWindow& w) {
  if (w.kind() != params.index_set)
    throw ParameterError("norm_sq_sequence: window kind does not match the index set");
  const Complex mu = params.mu;
  // Numerator argument 1 - mu + n; the denominator argument lambda +
  // conj(mu) + n differs from it by the real shift lambda - 1 + 2 Re mu.
  // On the principal line this shift is exactly zero.
  const Complex num0 = 1.0 - mu;
  const double shift = (params.lambda - 1.0) + 2.0 * mu.real();

  auto checked_real = [&](Complex value, const char* what, int n) {
    const double scale = std::abs(value);
    if (!(value.real() > 0.0) || !std::isfinite(value.real()) ||
        std::abs(value.imag()) > kImagTolerance * scale) {
      std::ostringstream msg;
      msg << "norm_sq_sequence: " << what << " at n = " << n << " is " << value.real()
          << (value.imag() < 0 ? " - " : " + ") << std::abs(value.imag())
          << "i, not a positive real (parameters outside the unitary range)";
      throw ParameterError(msg.str());
    }
    return value.real();
  };

  // With a zero shift numerator and denominator arguments coincide and every
  // norm is exactly 1.
  if (shift == 0.0) return NormSequence(w, std::vector<double>(w.size(), 1.0));

  std::vector<double> values(w.size());
  const Complex anchor = complex_gamma(num0) / complex_gamma(num0 + shift);
  double current = checked_real(anchor, "||f_0||^2", 0);
  if (w.contains(0)) values[w.position(0)] = current;
  for (int n = 0; n < w.last(); ++n) {
    const Complex num = num0 + static_cast<double>(n);
    current *= checked_real(num / (num + shift), "norm ratio", n);
    values[w.position(n + 1)] = current;
  }
  current = values[w.position(0)];
  for (int n = 0; n > w.first(); --n) {
    const Complex num = num0 + static_cast<double>(n - 1);
    current *= checked_real((num + shift) / num, "norm ratio", n - 1);
    values[w.position(n - 1)] = current;
  }
  return NormSequence(w, std::move(values));
}

}  // namespace homshift
