#include "homshift/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "homshift/errors.hpp"
#include "homshift/kernels.hpp"

namespace homshift {

// ---------------------------------------------------------------------------
// TruncationWindow

TruncationWindow TruncationWindow::make(IndexSet kind, int extent, int padding) {
  if (extent < 1) throw ParameterError("truncation window extent must be positive");
  if (padding < 0) throw ParameterError("truncation window padding must be non-negative");
  return TruncationWindow(kind, extent, padding);
}

TruncationWindow TruncationWindow::unilateral(int extent, int padding) {
  return make(IndexSet::unilateral, extent, padding);
}

TruncationWindow TruncationWindow::bilateral(int extent, int padding) {
  return make(IndexSet::bilateral, extent, padding);
}

void TruncationWindow::require_interior() const {
  const bool empty = padding_ >= extent_ ||
                     (kind_ == IndexSet::unilateral && 2 * padding_ > extent_);
  if (empty) {
    throw ParameterError("empty interior: padding " + std::to_string(padding_) +
                         " leaves no trusted indices in a window of extent " +
                         std::to_string(extent_));
  }
}

TruncationWindow TruncationWindow::with_padding(int padding) const {
  return make(kind_, extent_, padding);
}

// ---------------------------------------------------------------------------
// OperatorMatrix

OperatorMatrix::OperatorMatrix(TruncationWindow window, BasisTag basis)
    : window_(window), basis_(basis), dim_(window.size()), data_(dim_ * dim_) {}

OperatorMatrix OperatorMatrix::zero(TruncationWindow window, BasisTag basis) {
  return OperatorMatrix(window, basis);
}

OperatorMatrix OperatorMatrix::identity(TruncationWindow window, BasisTag basis) {
  OperatorMatrix m(window, basis);
  for (std::size_t i = 0; i < m.dim_; ++i) m.data_[i * m.dim_ + i] = 1.0;
  return m;
}

void require_conformal(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.basis() != b.basis()) throw ShapeError("operands are expressed in different bases");
  if (a.window() != b.window()) throw ShapeError("operands live on different windows");
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& other) {
  return add_scaled(1.0, other);
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& other) {
  return add_scaled(-1.0, other);
}

OperatorMatrix& OperatorMatrix::operator*=(Complex s) {
  for (auto& v : data_) v *= s;
  return *this;
}

OperatorMatrix& OperatorMatrix::add_scaled(Complex s, const OperatorMatrix& other) {
  require_conformal(*this, other);
  kernels::caxpy(data_.size(), s, other.data_.data(), data_.data());
  return *this;
}

OperatorMatrix OperatorMatrix::adjoint() const {
  OperatorMatrix out(window_, basis_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out.data_[j * dim_ + i] = std::conj(data_[i * dim_ + j]);
  return out;
}

OperatorMatrix OperatorMatrix::with_basis(BasisTag basis) const {
  OperatorMatrix out = *this;
  out.basis_ = basis;
  return out;
}

bool OperatorMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

double OperatorMatrix::norm1() const noexcept {
  double best = 0.0;
  for (std::size_t j = 0; j < dim_; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) col += std::abs(data_[i * dim_ + j]);
    best = std::max(best, col);
  }
  return best;
}

double OperatorMatrix::frobenius() const noexcept {
  return std::sqrt(kernels::sum_abs_sq(data_.size(), data_.data()));
}

OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) { return a += b; }
OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) { return a -= b; }
OperatorMatrix operator*(Complex s, OperatorMatrix a) { return a *= s; }

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_conformal(a, b);
  OperatorMatrix c(a.window(), a.basis());
  const std::size_t n = a.dim();
  kernels::cgemm(n, n, n, a.data().data(), b.data().data(), c.data().data());
  return c;
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  return a * b - b * a;
}

// ---------------------------------------------------------------------------
// LU factorization

namespace {

class LuFactor {
 public:
  explicit LuFactor(const OperatorMatrix& a) : n_(a.dim()), lu_(a.data().begin(), a.data().end()), piv_(n_) {
    for (std::size_t k = 0; k < n_; ++k) {
      std::size_t p = k;
      double best = std::abs(lu_[k * n_ + k]);
      for (std::size_t i = k + 1; i < n_; ++i) {
        const double v = std::abs(lu_[i * n_ + k]);
        if (v > best) {
          best = v;
          p = i;
        }
      }
      piv_[k] = p;
      if (best == 0.0) {
        singular_ = true;
        continue;
      }
      if (p != k)
        std::swap_ranges(lu_.begin() + static_cast<std::ptrdiff_t>(k * n_),
                         lu_.begin() + static_cast<std::ptrdiff_t>((k + 1) * n_),
                         lu_.begin() + static_cast<std::ptrdiff_t>(p * n_));
      const Complex pivot = lu_[k * n_ + k];
      for (std::size_t i = k + 1; i < n_; ++i) {
        Complex& l = lu_[i * n_ + k];
        if (l == Complex{}) continue;
        l /= pivot;
        const std::size_t tail = n_ - k - 1;
        kernels::caxpy(tail, -l, &lu_[k * n_ + k + 1], &lu_[i * n_ + k + 1]);
      }
    }
  }

  bool singular() const noexcept { return singular_; }

  // Solves A x = b in place.
  void solve(std::span<Complex> b) const {
    for (std::size_t k = 0; k < n_; ++k)
      if (piv_[k] != k) std::swap(b[k], b[piv_[k]]);
    for (std::size_t i = 0; i < n_; ++i) {
      Complex s = b[i];
      for (std::size_t j = 0; j < i; ++j) s -= lu_[i * n_ + j] * b[j];
      b[i] = s;
    }
    for (std::size_t i = n_; i-- > 0;) {
      Complex s = b[i];
      for (std::size_t j = i + 1; j < n_; ++j) s -= lu_[i * n_ + j] * b[j];
      b[i] = s / lu_[i * n_ + i];
    }
  }

  // Solves A^H x = b in place.
  void solve_adjoint(std::span<Complex> b) const {
    for (std::size_t i = 0; i < n_; ++i) {
      Complex s = b[i];
      for (std::size_t j = 0; j < i; ++j) s -= std::conj(lu_[j * n_ + i]) * b[j];
      b[i] = s / std::conj(lu_[i * n_ + i]);
    }
    for (std::size_t i = n_; i-- > 0;) {
      Complex s = b[i];
      for (std::size_t j = i + 1; j < n_; ++j) s -= std::conj(lu_[j * n_ + i]) * b[j];
      b[i] = s;
    }
    for (std::size_t k = n_; k-- > 0;)
      if (piv_[k] != k) std::swap(b[k], b[piv_[k]]);
  }

  // Solves A X = B for a row-major n x n right-hand side, in place.
  void solve_matrix(std::span<Complex> b) const {
    std::vector<Complex> column(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t i = 0; i < n_; ++i) column[i] = b[i * n_ + j];
      solve(column);
      for (std::size_t i = 0; i < n_; ++i) b[i * n_ + j] = column[i];
    }
  }

  // Hager's estimate of the 1-norm of A^{-1}, with Higham's alternating
  // test vector as a safeguard.
  double inverse_norm1_estimate() const {
    const std::size_t n = n_;
    std::vector<Complex> x(n, Complex(1.0 / static_cast<double>(n), 0.0));
    double estimate = 0.0;
    std::size_t last_j = n;
    for (int iter = 0; iter < 5; ++iter) {
      std::vector<Complex> y = x;
      solve(y);
      double ynorm = 0.0;
      for (const auto& v : y) ynorm += std::abs(v);
      if (iter > 0 && ynorm <= estimate) break;
      estimate = ynorm;
      std::vector<Complex> xi(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double m = std::abs(y[i]);
        xi[i] = m == 0.0 ? Complex(1.0) : y[i] / m;
      }
      solve_adjoint(xi);
      std::size_t j = 0;
      double zmax = 0.0;
      Complex zx{};
      for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(xi[i]) > zmax) {
          zmax = std::abs(xi[i]);
          j = i;
        }
        zx += std::conj(xi[i]) * x[i];
      }
      if (zmax <= zx.real() || j == last_j) break;
      std::fill(x.begin(), x.end(), Complex{});
      x[j] = 1.0;
      last_j = j;
    }
    std::vector<Complex> alt(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double sign = (i % 2 == 0) ? 1.0 : -1.0;
      alt[i] = sign * (1.0 + (n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0));
    }
    solve(alt);
    double alt_norm = 0.0;
    for (const auto& v : alt) alt_norm += std::abs(v);
    return std::max(estimate, 2.0 * alt_norm / (3.0 * static_cast<double>(n)));
  }

 private:
  std::size_t n_;
  std::vector<Complex> lu_;
  std::vector<std::size_t> piv_;
  bool singular_ = false;
};

}  // namespace

SolveResult solve(const OperatorMatrix& a, const OperatorMatrix& b, const SolveOptions& options) {
  require_conformal(a, b);
  if (!a.all_finite() || !b.all_finite()) throw NumericalError("solve: non-finite input");
  LuFactor lu(a);
  const double inf = std::numeric_limits<double>::infinity();
  if (lu.singular()) throw SingularityError("solve: matrix is exactly singular", inf);
  const double condition = a.norm1() * lu.inverse_norm1_estimate();
  if (!(condition <= options.max_condition)) {
    throw SingularityError("solve: condition estimate " + std::to_string(condition) +
                               " exceeds threshold " + std::to_string(options.max_condition),
                           condition);
  }
  OperatorMatrix x = b;
  lu.solve_matrix(x.data());
  const double residual = (a * x - b).frobenius();
  return {std::move(x), residual, condition};
}

// ---------------------------------------------------------------------------
// Matrix exponential

OperatorMatrix mat_exp(const OperatorMatrix& a, const ExpOptions& options) {
  if (!a.all_finite()) throw NumericalError("mat_exp: non-finite input");
  const double norm = a.norm1();
  if (norm > options.max_norm1) {
    throw OverflowError("mat_exp: 1-norm " + std::to_string(norm) + " exceeds bound " +
                        std::to_string(options.max_norm1));
  }
  // Diagonal input: entrywise exponential.
  {
    const std::size_t n = a.dim();
    bool diagonal = true;
    for (std::size_t i = 0; i < n && diagonal; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && a.data()[i * n + j] != Complex{}) {
          diagonal = false;
          break;
        }
    if (diagonal) {
      OperatorMatrix out = OperatorMatrix::zero(a.window(), a.basis());
      for (std::size_t i = 0; i < n; ++i) out.data()[i * n + i] = std::exp(a.data()[i * n + i]);
      return out;
    }
  }
  static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  int squarings = 0;
  if (norm > theta13) squarings = static_cast<int>(std::ceil(std::log2(norm / theta13)));
  OperatorMatrix scaled = std::ldexp(1.0, -squarings) * OperatorMatrix(a);

  const auto& w = a.window();
  const BasisTag basis = a.basis();
  const OperatorMatrix ident = OperatorMatrix::identity(w, basis);
  const OperatorMatrix a2 = scaled * scaled;
  const OperatorMatrix a4 = a2 * a2;
  const OperatorMatrix a6 = a4 * a2;

  OperatorMatrix inner_u = b[13] * a6;
  inner_u.add_scaled(b[11], a4).add_scaled(b[9], a2);
  OperatorMatrix u_poly = a6 * inner_u;
  u_poly.add_scaled(b[7], a6).add_scaled(b[5], a4).add_scaled(b[3], a2).add_scaled(b[1], ident);
  const OperatorMatrix u = scaled * u_poly;

  OperatorMatrix inner_v = b[12] * a6;
  inner_v.add_scaled(b[10], a4).add_scaled(b[8], a2);
  OperatorMatrix v = a6 * inner_v;
  v.add_scaled(b[6], a6).add_scaled(b[4], a4).add_scaled(b[2], a2).add_scaled(b[0], ident);

  OperatorMatrix result = v + u;
  LuFactor lu(v - u);
  if (lu.singular()) throw NumericalError("mat_exp: Pade denominator is singular");
  lu.solve_matrix(result.data());
  for (int s = 0; s < squarings; ++s) result = result * result;
  if (!result.all_finite()) throw OverflowError("mat_exp: result overflowed");
  return result;
}

// ---------------------------------------------------------------------------
// Interior norm

double interior_norm(const OperatorMatrix& a, const TruncationWindow& w) {
  if (a.window().size() != w.size() || a.window().kind() != w.kind())
    throw ShapeError("interior_norm: matrix does not live on the given window");
  w.require_interior();
  const std::size_t lo = static_cast<std::size_t>(w.padding());
  const std::size_t hi = w.size() - static_cast<std::size_t>(w.padding());  // exclusive
  const std::size_t n = a.dim();
  double acc = 0.0;
  for (std::size_t i = lo; i < hi; ++i) acc += kernels::sum_abs_sq(hi - lo, &a.data()[i * n + lo]);
  return std::sqrt(acc);
}

double interior_norm(const OperatorMatrix& a) { return interior_norm(a, a.window()); }

// ---------------------------------------------------------------------------
// FFT on the circle

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

namespace {

// In-place radix-2 transform with kernel e^{sign * 2 pi i jk / M}.
void fft_in_place(std::vector<Complex>& x, int sign) {
  const std::size_t n = x.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    std::vector<Complex> twiddle(half);
    for (std::size_t k = 0; k < half; ++k) {
      const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(len);
      twiddle[k] = Complex(std::cos(angle), std::sin(angle));
    }
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex u = x[start + k];
        const Complex v = x[start + k + half] * twiddle[k];
        x[start + k] = u + v;
        x[start + k + half] = u - v;
      }
    }
  }
}

}  // namespace

std::vector<Complex> circle_fft(std::span<const Complex> samples) {
  if (!is_power_of_two(samples.size()))
    throw ParameterError("circle_fft: sample count " + std::to_string(samples.size()) +
                         " is not a power of two");
  std::vector<Complex> out(samples.begin(), samples.end());
  fft_in_place(out, -1);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (auto& v : out) v *= scale;
  return out;
}

std::vector<Complex> circle_synthesize(std::span<const Complex> coefficients) {
  if (!is_power_of_two(coefficients.size()))
    throw ParameterError("circle_synthesize: coefficient count " +
                         std::to_string(coefficients.size()) + " is not a power of two");
  std::vector<Complex> out(coefficients.begin(), coefficients.end());
  fft_in_place(out, +1);
  return out;
}

}  // namespace homshift
