#pragma once

// Dense complex linear algebra on matrices indexed by a truncation window.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace homshift {

using Complex = std::complex<double>;

// Z+ (indices 0, 1, 2, ...) or Z.
enum class IndexSet { unilateral, bilateral };

enum class BasisTag { monomial, orthonormal };

// Finite index range standing in for Z+ or Z. Unilateral windows cover 0..N,
// bilateral windows -N..N. Indices at distance >= padding from both ends of
// the window are interior; everything else is treated as untrusted.
class TruncationWindow {
 public:
  static TruncationWindow unilateral(int extent, int padding);
  static TruncationWindow bilateral(int extent, int padding);
  static TruncationWindow make(IndexSet kind, int extent, int padding);

  IndexSet kind() const noexcept { return kind_; }
  int extent() const noexcept { return extent_; }
  int padding() const noexcept { return padding_; }

  int first() const noexcept { return kind_ == IndexSet::bilateral ? -extent_ : 0; }
  int last() const noexcept { return extent_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(last() - first() + 1); }

  bool contains(int n) const noexcept { return n >= first() && n <= last(); }
  std::size_t position(int n) const noexcept { return static_cast<std::size_t>(n - first()); }
  int index_at(std::size_t pos) const noexcept { return first() + static_cast<int>(pos); }

  bool is_interior(int n) const noexcept {
    return n - first() >= padding_ && last() - n >= padding_;
  }
  // Throws ParameterError when the interior is empty (padding >= N).
  void require_interior() const;

  TruncationWindow with_padding(int padding) const;

  friend bool operator==(const TruncationWindow&, const TruncationWindow&) = default;

 private:
  TruncationWindow(IndexSet kind, int extent, int padding)
      : kind_(kind), extent_(extent), padding_(padding) {}

  IndexSet kind_;
  int extent_;
  int padding_;
};

// Square complex matrix whose rows and columns are labelled by the indices of
// a window. Storage is row-major. Element access uses window labels, so
// at(n - 1, n) is the coefficient of f_{n-1} in the image of f_n.
class OperatorMatrix {
 public:
  OperatorMatrix(TruncationWindow window, BasisTag basis);

  static OperatorMatrix zero(TruncationWindow window, BasisTag basis = BasisTag::monomial);
  static OperatorMatrix identity(TruncationWindow window, BasisTag basis = BasisTag::monomial);

  const TruncationWindow& window() const noexcept { return window_; }
  BasisTag basis() const noexcept { return basis_; }
  std::size_t dim() const noexcept { return dim_; }

  Complex& at(int row, int col) noexcept {
    return data_[window_.position(row) * dim_ + window_.position(col)];
  }
  const Complex& at(int row, int col) const noexcept {
    return data_[window_.position(row) * dim_ + window_.position(col)];
  }
  // Zero for labels outside the window.
  Complex get(int row, int col) const noexcept {
    if (!window_.contains(row) || !window_.contains(col)) return {};
    return at(row, col);
  }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  OperatorMatrix& operator+=(const OperatorMatrix& other);
  OperatorMatrix& operator-=(const OperatorMatrix& other);
  OperatorMatrix& operator*=(Complex s);
  // this += s * other
  OperatorMatrix& add_scaled(Complex s, const OperatorMatrix& other);

  OperatorMatrix adjoint() const;
  OperatorMatrix with_basis(BasisTag basis) const;

  bool all_finite() const noexcept;
  // Max 1-norm over columns.
  double norm1() const noexcept;
  double frobenius() const noexcept;

 private:
  TruncationWindow window_;
  BasisTag basis_;
  std::size_t dim_;
  std::vector<Complex> data_;
};

OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b);
OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b);
OperatorMatrix operator*(Complex s, OperatorMatrix a);
OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);

// a*b - b*a
OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

// Throws ShapeError unless a and b share window and basis.
void require_conformal(const OperatorMatrix& a, const OperatorMatrix& b);

struct ExpOptions {
  // Inputs with 1-norm above this are rejected with OverflowError.
  double max_norm1 = 1.0e4;
};

// e^A by scaling and squaring around the degree-13 diagonal Pade approximant.
OperatorMatrix mat_exp(const OperatorMatrix& a, const ExpOptions& options = {});

struct SolveOptions {
  // Systems whose 1-norm condition estimate exceeds this are rejected.
  double max_condition = 1.0e8;
};

struct SolveResult {
  OperatorMatrix x;
  double residual;            // Frobenius norm of A X - B
  double condition_estimate;  // 1-norm condition estimate of A
};

// X with A X = B by LU with partial pivoting. Throws SingularityError when
// the condition estimate exceeds options.max_condition.
SolveResult solve(const OperatorMatrix& a, const OperatorMatrix& b,
                  const SolveOptions& options = {});

// Frobenius norm of the block whose row and column labels are both interior
// to w. Throws ParameterError when the interior is empty.
double interior_norm(const OperatorMatrix& a, const TruncationWindow& w);
double interior_norm(const OperatorMatrix& a);

// Fourier coefficients of samples s_j = F(e^{2 pi i j / M}), normalized so
// that the samples of e^{ik theta} give coefficient 1 at position k mod M.
// Throws ParameterError unless M is a power of two.
std::vector<Complex> circle_fft(std::span<const Complex> samples);

// Inverse of circle_fft: samples of sum_k c_k e^{ik theta} on the M-point grid.
std::vector<Complex> circle_synthesize(std::span<const Complex> coefficients);

bool is_power_of_two(std::size_t n) noexcept;

}  // namespace homshift
