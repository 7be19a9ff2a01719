#include "arq/field.hpp"

namespace arq {

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u32 fp_pow(u32 a, u64 e, u32 p) {
  u64 r = 1 % p, b = a % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return (u32)r;
}

u32 fp_inv(u32 a, u32 p) {
  if (a % p == 0) throw UsageError("division by zero in F_p");
  // p prime, so a^(p-2) works; extended Euclid would too.
  return fp_pow(a, p - 2, p);
}

u32 fp_from_int(long long v, u32 p) {
  long long r = v % (long long)p;
  if (r < 0) r += p;
  return (u32)r;
}

Mat Mat::identity(u32 p, int n) {
  Mat m(p, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1 % p;
  return m;
}

bool Mat::is_zero() const {
  for (u32 v : e)
    if (v) return false;
  return true;
}

bool Mat::is_identity() const {
  if (rows != cols) return false;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (at(i, j) != (i == j ? 1u % p : 0u)) return false;
  return true;
}

Mat Mat::transpose() const {
  Mat t(p, cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

Mat Mat::flatten() const {
  Mat f(p, rows * cols, 1);
  f.e = e;
  return f;
}

Mat Mat::col(int j) const {
  Mat c(p, rows, 1);
  for (int i = 0; i < rows; ++i) c.at(i, 0) = at(i, j);
  return c;
}

Mat Mat::row_mat(int i) const {
  Mat r(p, 1, cols);
  for (int j = 0; j < cols; ++j) r.at(0, j) = at(i, j);
  return r;
}

void Mat::set_block(int r0, int c0, const Mat& b) {
  if (r0 + b.rows > rows || c0 + b.cols > cols)
    throw UsageError("set_block out of range");
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j) at(r0 + i, c0 + j) = b.at(i, j);
}

Mat Mat::block(int r0, int c0, int r, int c) const {
  if (r0 + r > rows || c0 + c > cols) throw UsageError("block out of range");
  Mat b(p, r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) b.at(i, j) = at(r0 + i, c0 + j);
  return b;
}

static void check_same_p(const Mat& a, const Mat& b) {
  if (a.p != b.p) throw UsageError("matrix prime mismatch");
}

Mat operator*(const Mat& a, const Mat& b) {
  check_same_p(a, b);
  if (a.cols != b.rows) throw UsageError("matrix shape mismatch in product");
  Mat c(a.p, a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      u64 v = a.at(i, k);
      if (!v) continue;
      for (int j = 0; j < b.cols; ++j)
        c.at(i, j) = (u32)((c.at(i, j) + v * b.at(k, j)) % a.p);
    }
  return c;
}

Mat operator+(const Mat& a, const Mat& b) {
  check_same_p(a, b);
  if (a.rows != b.rows || a.cols != b.cols)
    throw UsageError("matrix shape mismatch in sum");
  Mat c = a;
  for (size_t i = 0; i < c.e.size(); ++i) c.e[i] = fp_add(a.e[i], b.e[i], a.p);
  return c;
}

Mat operator-(const Mat& a, const Mat& b) {
  check_same_p(a, b);
  if (a.rows != b.rows || a.cols != b.cols)
    throw UsageError("matrix shape mismatch in difference");
  Mat c = a;
  for (size_t i = 0; i < c.e.size(); ++i) c.e[i] = fp_sub(a.e[i], b.e[i], a.p);
  return c;
}

Mat scal(u32 c, const Mat& a) {
  Mat r = a;
  c %= a.p;
  for (auto& v : r.e) v = fp_mul(v, c, a.p);
  return r;
}

Mat hstack(const Mat& a, const Mat& b) {
  check_same_p(a, b);
  if (a.rows != b.rows) throw UsageError("hstack row mismatch");
  Mat c(a.p, a.rows, a.cols + b.cols);
  c.set_block(0, 0, a);
  c.set_block(0, a.cols, b);
  return c;
}

Mat vstack(const Mat& a, const Mat& b) {
  check_same_p(a, b);
  if (a.cols != b.cols) throw UsageError("vstack col mismatch");
  Mat c(a.p, a.rows + b.rows, a.cols);
  c.set_block(0, 0, a);
  c.set_block(a.rows, 0, b);
  return c;
}

Mat hstack(const std::vector<Mat>& parts, u32 p, int rows) {
  int cols = 0;
  for (auto& m : parts) cols += m.cols;
  Mat c(p, rows, cols);
  int off = 0;
  for (auto& m : parts) {
    if (m.rows != rows) throw UsageError("hstack row mismatch");
    c.set_block(0, off, m);
    off += m.cols;
  }
  return c;
}

Mat vstack(const std::vector<Mat>& parts, u32 p, int cols) {
  int rows = 0;
  for (auto& m : parts) rows += m.rows;
  Mat c(p, rows, cols);
  int off = 0;
  for (auto& m : parts) {
    if (m.cols != cols) throw UsageError("vstack col mismatch");
    c.set_block(off, 0, m);
    off += m.rows;
  }
  return c;
}

RrefResult rref(const Mat& m) {
  RrefResult res;
  res.reduced = m;
  Mat& a = res.reduced;
  const u32 p = m.p;
  int r = 0;
  for (int c = 0; c < a.cols && r < a.rows; ++c) {
    int piv = -1;
    for (int i = r; i < a.rows; ++i)
      if (a.at(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < a.cols; ++j) std::swap(a.at(piv, j), a.at(r, j));
    u32 inv = fp_inv(a.at(r, c), p);
    for (int j = c; j < a.cols; ++j) a.at(r, j) = fp_mul(a.at(r, j), inv, p);
    for (int i = 0; i < a.rows; ++i) {
      if (i == r) continue;
      u32 f = a.at(i, c);
      if (!f) continue;
      for (int j = c; j < a.cols; ++j)
        a.at(i, j) = fp_sub(a.at(i, j), fp_mul(f, a.at(r, j), p), p);
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

int rank(const Mat& m) { return rref(m).rank; }

bool invertible(const Mat& m) { return m.rows == m.cols && rank(m) == m.rows; }

Mat kernel_basis(const Mat& m) {
  RrefResult r = rref(m);
  std::vector<int> free_cols;
  {
    size_t pi = 0;
    for (int c = 0; c < m.cols; ++c) {
      if (pi < r.pivots.size() && r.pivots[pi] == c)
        ++pi;
      else
        free_cols.push_back(c);
    }
  }
  Mat k(m.p, m.cols, (int)free_cols.size());
  for (size_t j = 0; j < free_cols.size(); ++j) {
    int fc = free_cols[j];
    k.at(fc, (int)j) = 1 % m.p;
    for (size_t i = 0; i < r.pivots.size(); ++i)
      k.at(r.pivots[i], (int)j) = fp_neg(r.reduced.at((int)i, fc), m.p);
  }
  return k;
}

std::optional<Mat> solve(const Mat& a, const Mat& b) {
  check_same_p(a, b);
  if (a.rows != b.rows) throw UsageError("solve: row mismatch");
  RrefResult r = rref(hstack(a, b));
  for (int c : r.pivots)
    if (c >= a.cols) return std::nullopt;
  Mat x(a.p, a.cols, b.cols);
  for (size_t i = 0; i < r.pivots.size(); ++i)
    for (int j = 0; j < b.cols; ++j)
      x.at(r.pivots[i], j) = r.reduced.at((int)i, a.cols + j);
  return x;
}

Mat inverse(const Mat& m) {
  if (m.rows != m.cols) throw UsageError("inverse of non-square matrix");
  auto x = solve(m, Mat::identity(m.p, m.rows));
  if (!x || rank(m) != m.rows) throw UsageError("matrix not invertible");
  return *x;
}

Mat Quotient::project(const Mat& v) const {
  if (v.rows != n) throw UsageError("quotient project: dimension mismatch");
  Mat out(p, dim(), v.cols);
  for (int k = 0; k < v.cols; ++k) {
    // Reduce against the echelon span, then read off free coordinates.
    std::vector<u32> alpha(pivots.size());
    for (size_t i = 0; i < pivots.size(); ++i) alpha[i] = v.at(pivots[i], k);
    for (size_t j = 0; j < free_coords.size(); ++j) {
      u64 acc = v.at(free_coords[j], k);
      for (size_t i = 0; i < pivots.size(); ++i)
        acc += (u64)fp_neg(fp_mul(alpha[i], span_rref.at((int)i, free_coords[j]), p), p);
      out.at((int)j, k) = (u32)(acc % p);
    }
  }
  return out;
}

Mat Quotient::section(const Mat& c) const {
  if (c.rows != dim()) throw UsageError("quotient section: dimension mismatch");
  Mat out(p, n, c.cols);
  for (size_t j = 0; j < free_coords.size(); ++j)
    for (int k = 0; k < c.cols; ++k) out.at(free_coords[j], k) = c.at((int)j, k);
  return out;
}

Mat Quotient::section_basis() const { return section(Mat::identity(p, dim())); }

Quotient quotient_by_columns(const Mat& span_cols) {
  Quotient q;
  q.p = span_cols.p;
  q.n = span_cols.rows;
  RrefResult r = rref(span_cols.transpose());
  q.span_rref = r.reduced.block(0, 0, r.rank, span_cols.rows);
  q.pivots = r.pivots;
  size_t pi = 0;
  for (int c = 0; c < q.n; ++c) {
    if (pi < q.pivots.size() && q.pivots[pi] == c)
      ++pi;
    else
      q.free_coords.push_back(c);
  }
  return q;
}

bool ColSpace::contains(const Mat& v) const {
  if (v.rows != n) throw UsageError("colspace contains: dimension mismatch");
  if (basis.cols == 0) return v.is_zero();
  auto x = solve(basis, v);
  return x.has_value();
}

bool ColSpace::contains_space(const ColSpace& o) const { return contains(o.basis); }

ColSpace column_space(const Mat& cols) {
  ColSpace s;
  s.p = cols.p;
  s.n = cols.rows;
  RrefResult r = rref(cols.transpose());
  s.basis = r.reduced.block(0, 0, r.rank, cols.rows).transpose();
  return s;
}

u64 Rng::next() {
  // splitmix64
  u64 z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

u32 Rng::below(u32 n) {
  if (n == 0) throw UsageError("Rng::below(0)");
  return (u32)(next() % n);
}

}  // namespace arq
