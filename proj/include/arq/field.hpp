#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Exact dense linear algebra over a prime field F_p. Everything downstream
// (representations, Ext spaces, approximations) reduces to the operations in
// this header. All values are immutable after construction and all operations
// are pure, so they can be shared freely across threads.

namespace arq {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a computation contradicts a theorem the implementation relies
// on. Never expected to fire; treated as a falsification witness.
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A well-posed question whose mathematical answer is "no"; the message is
// the witness (e.g. asking for DTr of a projective).
struct NegativeResult : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_prime(u64 n);

// Modular scalar helpers. Residues live in [0, p); p < 2^31 so products fit
// in 64 bits.
inline u32 fp_add(u32 a, u32 b, u32 p) {
  u32 s = a + b;
  return s >= p ? s - p : s;
}
inline u32 fp_sub(u32 a, u32 b, u32 p) { return a >= b ? a - b : a + p - b; }
inline u32 fp_neg(u32 a, u32 p) { return a == 0 ? 0 : p - a; }
inline u32 fp_mul(u32 a, u32 b, u32 p) {
  return static_cast<u32>(static_cast<u64>(a) * b % p);
}
u32 fp_pow(u32 a, u64 e, u32 p);
u32 fp_inv(u32 a, u32 p);
// Reduce an arbitrary signed integer into [0, p).
u32 fp_from_int(long long v, u32 p);

// Dense row-major matrix over F_p. 0xN and Nx0 matrices are legal and act as
// zero maps.
struct Mat {
  u32 p = 0;
  int rows = 0;
  int cols = 0;
  std::vector<u32> e;  // row-major, size rows*cols

  Mat() = default;
  Mat(u32 p_, int r, int c) : p(p_), rows(r), cols(c), e((size_t)r * c, 0) {}

  static Mat identity(u32 p, int n);

  u32& at(int i, int j) { return e[(size_t)i * cols + j]; }
  u32 at(int i, int j) const { return e[(size_t)i * cols + j]; }

  bool is_zero() const;
  bool is_identity() const;
  bool operator==(const Mat& o) const {
    return p == o.p && rows == o.rows && cols == o.cols && e == o.e;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat transpose() const;
  // Column vector of all entries in row-major order.
  Mat flatten() const;
  Mat col(int j) const;
  Mat row_mat(int i) const;
  void set_block(int r0, int c0, const Mat& b);
  Mat block(int r0, int c0, int r, int c) const;
};

Mat operator*(const Mat& a, const Mat& b);
Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat scal(u32 c, const Mat& a);
Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);
Mat hstack(const std::vector<Mat>& parts, u32 p, int rows);
Mat vstack(const std::vector<Mat>& parts, u32 p, int cols);

struct RrefResult {
  Mat reduced;
  std::vector<int> pivots;
  int rank = 0;
};

// Unique reduced row echelon form; row space preserved.
RrefResult rref(const Mat& m);
int rank(const Mat& m);
bool invertible(const Mat& m);

// Columns form a basis of the right kernel, in pivot-complement order: one
// column per free column of rref(m), free columns increasing.
Mat kernel_basis(const Mat& m);

// Particular solution x of a*x = b with free variables set to 0, or nullopt
// if the system is inconsistent. b may have any number of columns.
std::optional<Mat> solve(const Mat& a, const Mat& b);

// Inverse of a square invertible matrix; throws UsageError otherwise.
Mat inverse(const Mat& m);

// Canonical coordinatization of the quotient k^n / U where U is spanned by
// the columns of a given matrix. project() sends a vector to its quotient
// coordinates (the free coordinates after reducing against the echelon span);
// section() lifts quotient coordinates back via unit vectors at the free
// positions. project(section(c)) == c and project(u) == 0 for u in U.
struct Quotient {
  u32 p = 0;
  int n = 0;                    // ambient dimension
  Mat span_rref;                // rref of U^T; rows span U as row vectors
  std::vector<int> pivots;      // coordinates eliminated by U
  std::vector<int> free_coords; // surviving quotient coordinates

  int dim() const { return (int)free_coords.size(); }
  Mat project(const Mat& v) const;  // n x k -> dim x k
  Mat section(const Mat& c) const;  // dim x k -> n x k
  Mat section_basis() const;        // n x dim
};

Quotient quotient_by_columns(const Mat& span_cols);

// Canonical echelon basis of a column span, with membership test.
struct ColSpace {
  u32 p = 0;
  int n = 0;
  Mat basis;  // n x r, columns are the echelon basis
  int dim() const { return basis.cols; }
  bool contains(const Mat& v) const;        // every column of v
  bool contains_space(const ColSpace& o) const;
};

ColSpace column_space(const Mat& cols);

// splitmix64: tiny deterministic generator; same seed gives the same stream
// on every platform.
struct Rng {
  u64 state;
  explicit Rng(u64 seed) : state(seed) {}
  u64 next();
  u32 below(u32 n);  // uniform-ish in [0, n)
};

}  // namespace arq
