#include "homshift/mobius.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "homshift/errors.hpp"

namespace homshift {

MobiusElement::MobiusElement(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta) {
  if (!(std::abs(std::abs(alpha) - 1.0) <= 1e-12))
    throw ParameterError("MobiusElement: |alpha| must be 1");
  if (!(std::abs(beta) <= 1.0 - 1e-12))
    throw ParameterError("MobiusElement: |beta| must be below 1");
}

Complex apply(const MobiusElement& phi, Complex z) {
  return phi.alpha() * (z - phi.beta()) / (1.0 - std::conj(phi.beta()) * z);
}

Complex derivative(const MobiusElement& phi, Complex z) {
  const Complex denom = 1.0 - std::conj(phi.beta()) * z;
  return phi.alpha() * (1.0 - std::norm(phi.beta())) / (denom * denom);
}

MobiusElement inverse(const MobiusElement& phi) {
  return MobiusElement(std::conj(phi.alpha()), -phi.alpha() * phi.beta());
}

MobiusElement star(const MobiusElement& phi) {
  return MobiusElement(std::conj(phi.alpha()), std::conj(phi.beta()));
}

MobiusElement compose(const MobiusElement& phi, const MobiusElement& psi) {
  // The composite sends beta to 0, so beta = psi^{-1}(phi^{-1}(0)).
  const Complex beta = apply(inverse(psi), apply(inverse(phi), 0.0));
  // alpha from the image of whichever of +-1/2 lies farther from beta.
  const Complex probe = beta.real() > 0.0 ? Complex(-0.5) : Complex(0.5);
  const Complex image = apply(phi, apply(psi, probe));
  const Complex alpha = image * (1.0 - std::conj(beta) * probe) / (probe - beta);
  if (!(std::abs(std::abs(alpha) - 1.0) <= 1e-10))
    throw NumericalError("compose: recovered alpha is not unimodular");
  return MobiusElement(alpha / std::abs(alpha), beta);
}

double parameter_distance(const MobiusElement& a, const MobiusElement& b) noexcept {
  return std::max(std::abs(a.alpha() - b.alpha()), std::abs(a.beta() - b.beta()));
}

std::string_view generator_name(Generator g) noexcept {
  switch (g) {
    case Generator::h:
      return "h";
    case Generator::L:
      return "L";
    case Generator::M:
      return "M";
  }
  return "?";
}

MobiusElement flow(Generator gen, double t) {
  if (!(std::abs(t) <= kMaxSegmentTime)) {
    std::ostringstream msg;
    msg << "flow: |t| = " << std::abs(t) << " exceeds the segment cap " << kMaxSegmentTime
        << "; split the flow into shorter segments";
    throw ParameterError(msg.str());
  }
  switch (gen) {
    case Generator::h:
      return MobiusElement(std::polar(1.0, 2.0 * t), 0.0);
    case Generator::L:
      return MobiusElement(1.0, -std::tanh(t));
    case Generator::M:
      return MobiusElement(1.0, Complex(0.0, -std::tanh(t)));
  }
  throw ParameterError("flow: unknown generator");
}

GroupPath::GroupPath(std::vector<PathSegment> segments) : segments_(std::move(segments)) {
  for (const auto& s : segments_) {
    if (!(std::abs(s.time) <= kMaxSegmentTime)) {
      std::ostringstream msg;
      msg << "GroupPath: segment time " << s.time << " exceeds the cap " << kMaxSegmentTime;
      throw ParameterError(msg.str());
    }
  }
}

GroupPath GroupPath::parse(std::string_view text) {
  std::vector<PathSegment> segments;
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) return GroupPath();
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view token =
        trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    const std::size_t colon = token.find(':');
    if (colon == std::string_view::npos)
      throw ParameterError("path literal: expected gen:time, got '" + std::string(token) + "'");
    const std::string_view gen = trim(token.substr(0, colon));
    const std::string_view time_text = trim(token.substr(colon + 1));
    Generator g;
    if (gen == "h") {
      g = Generator::h;
    } else if (gen == "L") {
      g = Generator::L;
    } else if (gen == "M") {
      g = Generator::M;
    } else {
      throw ParameterError("path literal: unknown generator '" + std::string(gen) + "'");
    }
    double t = 0.0;
    const auto [ptr, ec] = std::from_chars(time_text.data(), time_text.data() + time_text.size(), t);
    if (ec != std::errc() || ptr != time_text.data() + time_text.size() || !std::isfinite(t))
      throw ParameterError("path literal: bad time '" + std::string(time_text) + "'");
    segments.push_back({g, t});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return GroupPath(std::move(segments));
}

GroupPath GroupPath::then(const GroupPath& other) const {
  std::vector<PathSegment> joined = segments_;
  joined.insert(joined.end(), other.segments_.begin(), other.segments_.end());
  return GroupPath(std::move(joined));
}

GroupPath GroupPath::inverse() const {
  std::vector<PathSegment> reversed(segments_.rbegin(), segments_.rend());
  for (auto& s : reversed) s.time = -s.time;
  return GroupPath(std::move(reversed));
}

std::string GroupPath::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (i) out += ',';
    out += generator_name(segments_[i].generator);
    out += ':';
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, segments_[i].time);
    out.append(buf, res.ptr);
  }
  return out;
}

MobiusElement path_to_mobius(const GroupPath& path) {
  MobiusElement acc = MobiusElement::identity();
  for (const auto& s : path.segments()) acc = compose(acc, flow(s.generator, s.time));
  return acc;
}

GroupPath star_path(const GroupPath& path) {
  std::vector<PathSegment> out = path.segments();
  for (auto& s : out)
    if (s.generator != Generator::L) s.time = -s.time;
  return GroupPath(std::move(out));
}

}  // namespace homshift
