#pragma once

// The Mobius group of the unit disc, its universal cover realized by flow
// paths through the identity, and the star automorphism.

#include <string>
#include <string_view>
#include <vector>

#include "homshift/numkernel.hpp"

namespace homshift {

// phi_{alpha,beta}(z) = alpha (z - beta) / (1 - conj(beta) z), |alpha| = 1, |beta| < 1.
class MobiusElement {
 public:
  // Throws ParameterError unless ||alpha| - 1| <= 1e-12 and |beta| <= 1 - 1e-12.
  MobiusElement(Complex alpha, Complex beta);

  static MobiusElement identity() { return MobiusElement(1.0, 0.0); }

  Complex alpha() const noexcept { return alpha_; }
  Complex beta() const noexcept { return beta_; }

 private:
  Complex alpha_;
  Complex beta_;
};

Complex apply(const MobiusElement& phi, Complex z);

// z -> phi(psi(z)). Parameters are recovered from the composite map: beta as
// the preimage of 0 and alpha from one further evaluation. Throws
// NumericalError if the recovered alpha is not unimodular to 1e-10.
MobiusElement compose(const MobiusElement& phi, const MobiusElement& psi);

// phi_{alpha,beta}^{-1} = phi_{conj(alpha), -alpha beta}.
MobiusElement inverse(const MobiusElement& phi);

// z -> conj(phi(conj z)), which is phi_{conj(alpha), conj(beta)}.
MobiusElement star(const MobiusElement& phi);

// phi'(z) = alpha (1 - |beta|^2) / (1 - conj(beta) z)^2
Complex derivative(const MobiusElement& phi, Complex z);

// Max distance between the parameter pairs.
double parameter_distance(const MobiusElement& a, const MobiusElement& b) noexcept;

// Real generators of the Lie algebra:
//   exp(t h) = phi_{e^{2it}, 0}, exp(t L) = phi_{1, -tanh t}, exp(t M) = phi_{1, -i tanh t}.
enum class Generator { h, L, M };

std::string_view generator_name(Generator g) noexcept;

constexpr double kMaxSegmentTime = 0.5;

// One-parameter subgroup element. Throws ParameterError for |t| > 0.5.
MobiusElement flow(Generator gen, double t);

struct PathSegment {
  Generator generator;
  double time;

  friend bool operator==(const PathSegment&, const PathSegment&) = default;
};

// An element of the universal cover, written as the product
// exp(t_1 X_1) exp(t_2 X_2) ... of short flows. Each |t_i| <= 0.5.
class GroupPath {
 public:
  GroupPath() = default;
  explicit GroupPath(std::vector<PathSegment> segments);

  // Parses "gen:time" tokens separated by commas, e.g. "L:0.1,M:-0.05,h:0.3".
  // The empty string is the identity. Throws ParameterError on bad syntax.
  static GroupPath parse(std::string_view text);

  const std::vector<PathSegment>& segments() const noexcept { return segments_; }
  bool empty() const noexcept { return segments_.empty(); }

  // Concatenation: the product of the two cover elements.
  GroupPath then(const GroupPath& other) const;
  // Reversed path with negated times: the inverse cover element.
  GroupPath inverse() const;

  std::string to_string() const;

  friend bool operator==(const GroupPath&, const GroupPath&) = default;

 private:
  std::vector<PathSegment> segments_;
};

// flow(X_1, t_1) o flow(X_2, t_2) o ...; identity for the empty path.
MobiusElement path_to_mobius(const GroupPath& path);

// Lift of the star automorphism: (h,t) -> (h,-t), (L,t) -> (L,t), (M,t) -> (M,-t).
GroupPath star_path(const GroupPath& path);

}  // namespace homshift
