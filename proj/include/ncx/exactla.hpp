#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ncx {

struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& what) : std::runtime_error(what), code(std::move(c)) {}
};

// Least non-negative residues modulo a prime.
struct PrimeField {
  using value_type = std::int64_t;
  std::int64_t p = 2;

  PrimeField() = default;
  explicit PrimeField(std::int64_t q) : p(q) {
    if (q < 2) throw Error("bad-field", "modulus must be a prime >= 2");
    for (std::int64_t d = 2; d * d <= q; ++d)
      if (q % d == 0) throw Error("bad-field", "modulus " + std::to_string(q) + " is not prime");
  }
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long long v) const {
    long long r = v % p;
    return r < 0 ? r + p : r;
  }
  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= p ? s - p : s;
  }
  value_type sub(value_type a, value_type b) const {
    value_type s = a - b;
    return s < 0 ? s + p : s;
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type mul(value_type a, value_type b) const { return (a * b) % p; }
  value_type inv(value_type a) const {
    if (a == 0) throw Error("division-by-zero", "inverse of 0");
    std::int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::tie(t, nt) = std::make_pair(nt, t - q * nt);
      std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    return t < 0 ? t + p : t;
  }
  bool is_zero(value_type a) const { return a == 0; }
  std::string str(value_type a) const { return std::to_string(a); }
  bool operator==(const PrimeField& o) const { return p == o.p; }
};

// Q with canonical reduced fractions.
struct Rationals {
  using value_type = mpq_class;
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long long v) const { return mpq_class(mpz_class(std::to_string(v))); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    if (a == 0) throw Error("division-by-zero", "inverse of 0");
    return 1 / a;
  }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  std::string str(const value_type& a) const { return a.get_str(); }
  static value_type parse(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw Error("parse-error", "bad rational '" + s + "'");
    q.canonicalize();
    return q;
  }
  bool operator==(const Rationals&) const { return true; }
};

template <class F>
class Mat {
 public:
  using T = typename F::value_type;

  F field;
  std::size_t rows = 0, cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(const F& f, std::size_t r, std::size_t c) : field(f), rows(r), cols(c), a(r * c, f.zero()) {}

  static Mat zero(const F& f, std::size_t r, std::size_t c) { return Mat(f, r, c); }
  static Mat identity(const F& f, std::size_t n) {
    Mat m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
  }

  T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  bool is_zero() const {
    for (const auto& v : a)
      if (!field.is_zero(v)) return false;
    return true;
  }
  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

  Mat operator+(const Mat& o) const {
    check_same(o, "+");
    Mat r(field, rows, cols);
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = field.add(a[i], o.a[i]);
    return r;
  }
  Mat operator-(const Mat& o) const {
    check_same(o, "-");
    Mat r(field, rows, cols);
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = field.sub(a[i], o.a[i]);
    return r;
  }
  Mat operator-() const {
    Mat r(field, rows, cols);
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = field.neg(a[i]);
    return r;
  }
  Mat scaled(const T& c) const {
    Mat r(field, rows, cols);
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = field.mul(c, a[i]);
    return r;
  }
  Mat operator*(const Mat& o) const {
    if (cols != o.rows)
      throw Error("dimension-mismatch", "product " + shape() + " * " + o.shape());
    Mat r(field, rows, o.cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t k = 0; k < cols; ++k) {
        const T& v = (*this)(i, k);
        if (field.is_zero(v)) continue;
        for (std::size_t j = 0; j < o.cols; ++j)
          r(i, j) = field.add(r(i, j), field.mul(v, o(k, j)));
      }
    return r;
  }
  Mat transpose() const {
    Mat r(field, cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
    return r;
  }
  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows || c0 + nc > cols) throw Error("dimension-mismatch", "block out of range");
    Mat r(field, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
  }
  void set_block(std::size_t r0, std::size_t c0, const Mat& b) {
    if (r0 + b.rows > rows || c0 + b.cols > cols) throw Error("dimension-mismatch", "set_block out of range");
    for (std::size_t i = 0; i < b.rows; ++i)
      for (std::size_t j = 0; j < b.cols; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }
  Mat col(std::size_t j) const { return block(0, j, rows, 1); }
  Mat select_cols(const std::vector<std::size_t>& js) const {
    Mat r(field, rows, js.size());
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t k = 0; k < js.size(); ++k) r(i, k) = (*this)(i, js[k]);
    return r;
  }
  // Column-major flattening.
  Mat vec() const {
    Mat r(field, rows * cols, 1);
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t i = 0; i < rows; ++i) r(j * rows + i, 0) = (*this)(i, j);
    return r;
  }
  static Mat unvec(const Mat& v, std::size_t r, std::size_t c, std::size_t off = 0) {
    Mat m(v.field, r, c);
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t i = 0; i < r; ++i) m(i, j) = v(off + j * r + i, 0);
    return m;
  }

  std::string shape() const { return std::to_string(rows) + "x" + std::to_string(cols); }
  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < cols; ++j) os << (j ? "," : "") << field.str((*this)(i, j));
      os << "]";
    }
    os << "]";
    return os.str();
  }

 private:
  void check_same(const Mat& o, const char* op) const {
    if (rows != o.rows || cols != o.cols)
      throw Error("dimension-mismatch", std::string("operator ") + op + " on " + shape() + " and " + o.shape());
  }
};

template <class F>
Mat<F> hcat(const Mat<F>& x, const Mat<F>& y) {
  if (x.rows != y.rows) throw Error("dimension-mismatch", "hcat " + x.shape() + " | " + y.shape());
  Mat<F> r(x.field, x.rows, x.cols + y.cols);
  r.set_block(0, 0, x);
  r.set_block(0, x.cols, y);
  return r;
}

template <class F>
Mat<F> vcat(const Mat<F>& x, const Mat<F>& y) {
  if (x.cols != y.cols) throw Error("dimension-mismatch", "vcat " + x.shape() + " / " + y.shape());
  Mat<F> r(x.field, x.rows + y.rows, x.cols);
  r.set_block(0, 0, x);
  r.set_block(x.rows, 0, y);
  return r;
}

template <class F>
Mat<F> diag(const Mat<F>& x, const Mat<F>& y) {
  Mat<F> r(x.field, x.rows + y.rows, x.cols + y.cols);
  r.set_block(0, 0, x);
  r.set_block(x.rows, x.cols, y);
  return r;
}

template <class F>
Mat<F> power(const Mat<F>& m, int e) {
  Mat<F> r = Mat<F>::identity(m.field, m.rows);
  for (int i = 0; i < e; ++i) r = m * r;
  return r;
}

template <class F>
struct RREF {
  Mat<F> R;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

template <class F>
RREF<F> rref(Mat<F> m) {
  const F& f = m.field;
  RREF<F> out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t piv = r;
    while (piv < m.rows && f.is_zero(m(piv, c))) ++piv;
    if (piv == m.rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(r, j));
    auto inv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols; ++j) m(r, j) = f.mul(inv, m(r, j));
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      auto fac = m(i, c);
      for (std::size_t j = c; j < m.cols; ++j) m(i, j) = f.sub(m(i, j), f.mul(fac, m(r, j)));
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.R = std::move(m);
  return out;
}

template <class F>
std::size_t rank(const Mat<F>& m) {
  if (m.rows == 0 || m.cols == 0) return 0;
  return rref(m.rows > m.cols ? m.transpose() : m).rank;
}

// Columns span {v : m v = 0}, one vector per free column.
template <class F>
Mat<F> kernel_basis(const Mat<F>& m) {
  auto e = rref(m);
  const F& f = m.field;
  std::vector<bool> is_piv(m.cols, false);
  for (auto c : e.pivots) is_piv[c] = true;
  Mat<F> k(f, m.cols, m.cols - e.rank);
  std::size_t col = 0;
  for (std::size_t j = 0; j < m.cols; ++j) {
    if (is_piv[j]) continue;
    k(j, col) = f.one();
    for (std::size_t i = 0; i < e.rank; ++i) k(e.pivots[i], col) = f.neg(e.R(i, j));
    ++col;
  }
  return k;
}

// Pivot columns of m: a basis of its column space.
template <class F>
Mat<F> image_basis(const Mat<F>& m) {
  return m.select_cols(rref(m).pivots);
}

// Rows span the left kernel: q m = 0 with q of full row rank.
template <class F>
Mat<F> cokernel_projection(const Mat<F>& m) {
  return kernel_basis(m.transpose()).transpose();
}

template <class F>
std::optional<Mat<F>> solve(const Mat<F>& m, const Mat<F>& b) {
  if (m.rows != b.rows) throw Error("dimension-mismatch", "solve " + m.shape() + " vs " + b.shape());
  const F& f = m.field;
  auto e = rref(hcat(m, b));
  for (auto c : e.pivots)
    if (c >= m.cols) return std::nullopt;
  Mat<F> x(f, m.cols, b.cols);
  for (std::size_t i = 0; i < e.rank; ++i)
    for (std::size_t j = 0; j < b.cols; ++j) x(e.pivots[i], j) = e.R(i, m.cols + j);
  return x;
}

template <class F>
Mat<F> solve_or_throw(const Mat<F>& m, const Mat<F>& b, const char* what) {
  auto x = solve(m, b);
  if (!x) throw Error("internal", std::string("inconsistent system: ") + what);
  return *x;
}

// l with l s = 1 for s of full column rank.
template <class F>
Mat<F> left_inverse(const Mat<F>& s) {
  return solve_or_throw(s.transpose(), Mat<F>::identity(s.field, s.cols), "left inverse").transpose();
}

// r with q r = 1 for q of full row rank.
template <class F>
Mat<F> right_inverse(const Mat<F>& q) {
  return solve_or_throw(q, Mat<F>::identity(q.field, q.rows), "right inverse");
}

template <class F>
std::optional<Mat<F>> inverse(const Mat<F>& m) {
  if (m.rows != m.cols || rank(m) != m.rows) return std::nullopt;
  return solve(m, Mat<F>::identity(m.field, m.rows));
}

template <class F>
struct Pullback {
  Mat<F> inclusion;  // P -> A (+) B
  Mat<F> to_a, to_b;
};

template <class F>
Pullback<F> pullback_square(const Mat<F>& a, const Mat<F>& b) {
  if (a.rows != b.rows) throw Error("dimension-mismatch", "pullback of " + a.shape() + " and " + b.shape());
  auto k = kernel_basis(hcat(a, -b));
  return {k, k.block(0, 0, a.cols, k.cols), k.block(a.cols, 0, b.cols, k.cols)};
}

template <class F>
struct Pushout {
  Mat<F> projection;  // B (+) C -> Q
  Mat<F> from_b, from_c;
};

template <class F>
Pushout<F> pushout_square(const Mat<F>& a, const Mat<F>& c) {
  if (a.cols != c.cols) throw Error("dimension-mismatch", "pushout of " + a.shape() + " and " + c.shape());
  auto q = cokernel_projection(vcat(a, -c));
  return {q, q.block(0, 0, q.rows, a.rows), q.block(0, a.rows, q.rows, c.rows)};
}

template <class F>
struct IdempotentSplit {
  Mat<F> image, complement;  // bases of eV and (1-e)V
  Mat<F> change;             // [image | complement]; change^-1 e change = diag(1, 0)
};

template <class F>
IdempotentSplit<F> split_idempotent(const Mat<F>& e) {
  if (e.rows != e.cols || !(e * e == e)) throw Error("not-idempotent", "e*e != e");
  auto im = image_basis(e);
  auto co = image_basis(Mat<F>::identity(e.field, e.rows) - e);
  return {im, co, hcat(im, co)};
}

}  // namespace ncx
