#include "wwrel/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "wwrel/errors.hpp"

namespace wwrel {

namespace {

bool is_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

// dst + alpha * src
SparseRow axpy(const SparseRow& dst, const Rational& alpha,
               const SparseRow& src) {
  SparseRow out;
  out.reserve(dst.size() + src.size());
  auto d = dst.begin();
  auto s = src.begin();
  while (d != dst.end() || s != src.end()) {
    if (s == src.end() || (d != dst.end() && d->col < s->col)) {
      out.push_back(*d++);
    } else if (d == dst.end() || s->col < d->col) {
      out.push_back({s->col, alpha * s->value});
      ++s;
    } else {
      Rational v = d->value + alpha * s->value;
      if (sgn(v) != 0) out.push_back({d->col, std::move(v)});
      ++d;
      ++s;
    }
  }
  return out;
}

const Rational* find_entry(const SparseRow& row, std::size_t col) {
  auto it = std::lower_bound(
      row.begin(), row.end(), col,
      [](const Entry& e, std::size_t c) { return e.col < c; });
  if (it == row.end() || it->col != col) return nullptr;
  return &it->value;
}

// Incremental Gauss-Jordan elimination. Every stored row has leading
// coefficient 1 and is zero in every other row's pivot column.
class Echelon {
 public:
  explicit Echelon(std::size_t cols) : pivot_slot_(cols, kNone) {}

  // Returns false if v is in the span of the rows inserted so far.
  bool insert(SparseRow v) {
    std::vector<std::pair<std::size_t, Rational>> hits;
    for (const Entry& e : v) {
      if (pivot_slot_[e.col] != kNone) hits.emplace_back(pivot_slot_[e.col], e.value);
    }
    for (auto& [slot, coeff] : hits) {
      v = axpy(v, -coeff, rows_[slot]);
    }
    if (v.empty()) return false;

    const std::size_t lead = v.front().col;
    if (v.front().value != 1) {
      Rational inv = 1 / v.front().value;
      for (Entry& e : v) e.value *= inv;
    }
    for (SparseRow& r : rows_) {
      if (const Rational* c = find_entry(r, lead)) {
        Rational coeff = *c;
        r = axpy(r, -coeff, v);
      }
    }
    pivot_slot_[lead] = rows_.size();
    pivots_.push_back(lead);
    rows_.push_back(std::move(v));
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

  Matrix finish(std::size_t cols) && {
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return pivots_[a] < pivots_[b];
    });
    std::vector<SparseRow> sorted;
    sorted.reserve(rows_.size());
    for (std::size_t i : order) sorted.push_back(std::move(rows_[i]));
    return Matrix::from_rows(cols, std::move(sorted));
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::vector<std::size_t> pivot_slot_;
  std::vector<std::size_t> pivots_;
  std::vector<SparseRow> rows_;
};

Matrix rref_rows(std::size_t cols, std::span<const SparseRow> rows) {
  Echelon ech(cols);
  for (const SparseRow& r : rows) {
    if (ech.rank() == cols) break;
    ech.insert(r);
  }
  return std::move(ech).finish(cols);
}

}  // namespace

std::string format_rational(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!is_digits(num) || !is_digits(den)) {
    throw ParseError("not a rational number: \"" + std::string(text) + "\"");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) {
    throw ParseError("zero denominator: \"" + std::string(text) + "\"");
  }
  if (text.front() == '-') n = -n;
  Rational out(n, d);
  out.canonicalize();
  return out;
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.rows_[i].push_back({i, Rational(1)});
  return m;
}

Matrix Matrix::from_rows(std::size_t cols, std::vector<SparseRow> rows) {
  for (const SparseRow& r : rows) {
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (r[k].col >= cols || sgn(r[k].value) == 0 ||
          (k > 0 && r[k - 1].col >= r[k].col)) {
        throw DomainError("malformed sparse row");
      }
    }
  }
  Matrix m;
  m.cols_ = cols;
  m.rows_ = std::move(rows);
  return m;
}

Matrix Matrix::from_dense(std::size_t cols,
                          const std::vector<std::vector<Rational>>& rows) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw DomainError("row " + std::to_string(r) + " has " +
                        std::to_string(rows[r].size()) + " entries, expected " +
                        std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (sgn(rows[r][c]) != 0) m.rows_[r].push_back({c, rows[r][c]});
    }
  }
  return m;
}

Rational Matrix::at(std::size_t r, std::size_t c) const {
  if (const Rational* v = find_entry(rows_[r], c)) return *v;
  return 0;
}

std::size_t Matrix::nonzeros() const {
  std::size_t n = 0;
  for (const SparseRow& r : rows_) n += r.size();
  return n;
}

bool Matrix::is_zero() const {
  return std::all_of(rows_.begin(), rows_.end(),
                     [](const SparseRow& r) { return r.empty(); });
}

std::vector<std::vector<Rational>> Matrix::to_dense() const {
  std::vector<std::vector<Rational>> out(rows_.size(),
                                         std::vector<Rational>(cols_));
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (const Entry& e : rows_[r]) out[r][e.col] = e.value;
  }
  return out;
}

Matrix transpose(const Matrix& m) {
  std::vector<SparseRow> cols(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const Entry& e : m.row(r)) cols[e.col].push_back({r, e.value});
  }
  return Matrix::from_rows(m.rows(), std::move(cols));
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DomainError("cannot multiply " + std::to_string(a.rows()) + "x" +
                      std::to_string(a.cols()) + " by " +
                      std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  std::vector<SparseRow> out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    SparseRow acc;
    for (const Entry& e : a.row(r)) acc = axpy(acc, e.value, b.row(e.col));
    out[r] = std::move(acc);
  }
  return Matrix::from_rows(b.cols(), std::move(out));
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  if (top.cols() != bottom.cols()) {
    throw DomainError("vstack: column counts differ");
  }
  std::vector<SparseRow> rows(top.row_data().begin(), top.row_data().end());
  rows.insert(rows.end(), bottom.row_data().begin(), bottom.row_data().end());
  return Matrix::from_rows(top.cols(), std::move(rows));
}

Matrix remap_columns(const Matrix& m, std::size_t new_cols,
                     std::span<const std::size_t> new_index) {
  if (new_index.size() != m.cols()) {
    throw DomainError("remap_columns: index length mismatch");
  }
  std::vector<SparseRow> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    SparseRow out;
    out.reserve(m.row(r).size());
    for (const Entry& e : m.row(r)) out.push_back({new_index[e.col], e.value});
    std::sort(out.begin(), out.end(),
              [](const Entry& x, const Entry& y) { return x.col < y.col; });
    rows[r] = std::move(out);
  }
  return Matrix::from_rows(new_cols, std::move(rows));
}

Matrix select_columns(const Matrix& m, std::span<const std::size_t> columns) {
  constexpr std::size_t kDrop = static_cast<std::size_t>(-1);
  std::vector<std::size_t> where(m.cols(), kDrop);
  for (std::size_t i = 0; i < columns.size(); ++i) where[columns[i]] = i;
  std::vector<SparseRow> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    SparseRow out;
    for (const Entry& e : m.row(r)) {
      if (where[e.col] != kDrop) out.push_back({where[e.col], e.value});
    }
    std::sort(out.begin(), out.end(),
              [](const Entry& x, const Entry& y) { return x.col < y.col; });
    rows[r] = std::move(out);
  }
  return Matrix::from_rows(columns.size(), std::move(rows));
}

Matrix rref(const Matrix& m) { return rref_rows(m.cols(), m.row_data()); }

std::size_t rank(const Matrix& m) { return rref(m).rows(); }

Rational dot(const SparseRow& a, const SparseRow& b) {
  Rational acc = 0;
  auto x = a.begin();
  auto y = b.begin();
  while (x != a.end() && y != b.end()) {
    if (x->col < y->col) {
      ++x;
    } else if (y->col < x->col) {
      ++y;
    } else {
      acc += x->value * y->value;
      ++x;
      ++y;
    }
  }
  return acc;
}

Subspace Subspace::span(const Matrix& generators) {
  return Subspace(rref(generators));
}

Subspace Subspace::zero(std::size_t ambient_dim) {
  return Subspace(Matrix(0, ambient_dim));
}

Subspace Subspace::full(std::size_t ambient_dim) {
  return Subspace(Matrix::identity(ambient_dim));
}

bool Subspace::contains(const SparseRow& vector) const {
  // Reduce against the canonical basis: the pivot of each basis row is its
  // first entry, and no other basis row touches that column.
  SparseRow v = vector;
  for (const SparseRow& b : basis_.row_data()) {
    const std::size_t pivot = b.front().col;
    if (const Rational* c = find_entry(v, pivot)) {
      Rational coeff = *c;
      v = axpy(v, -coeff, b);
    }
  }
  return v.empty();
}

Subspace kernel(const Matrix& m) {
  const Matrix r = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (const SparseRow& row : r.row_data()) is_pivot[row.front().col] = true;

  // Free column j contributes e_j - sum_i r[i][j] e_{pivot(i)}.
  std::vector<SparseRow> free_vectors(n);
  for (const SparseRow& row : r.row_data()) {
    const std::size_t pivot = row.front().col;
    for (const Entry& e : row) {
      if (!is_pivot[e.col]) free_vectors[e.col].push_back({pivot, -e.value});
    }
  }
  std::vector<SparseRow> gens;
  for (std::size_t j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    SparseRow v = std::move(free_vectors[j]);
    v.push_back({j, Rational(1)});
    std::sort(v.begin(), v.end(),
              [](const Entry& x, const Entry& y) { return x.col < y.col; });
    gens.push_back(std::move(v));
  }
  return Subspace::span(Matrix::from_rows(n, std::move(gens)));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw DomainError("intersect: ambient dimensions " +
                      std::to_string(a.ambient_dim()) + " and " +
                      std::to_string(b.ambient_dim()) + " differ");
  }
  if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(a.ambient_dim());
  if (a.dim() == a.ambient_dim()) return b;
  if (b.dim() == b.ambient_dim()) return a;
  // a ∩ b = (a⊥ + b⊥)⊥ for the standard dot product.
  const Subspace a_perp = kernel(a.basis());
  const Subspace b_perp = kernel(b.basis());
  return kernel(vstack(a_perp.basis(), b_perp.basis()));
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw DomainError("sum: ambient dimensions " +
                      std::to_string(a.ambient_dim()) + " and " +
                      std::to_string(b.ambient_dim()) + " differ");
  }
  return Subspace::span(vstack(a.basis(), b.basis()));
}

Subspace apply_map(const Matrix& m, const Subspace& s) {
  if (m.cols() != s.ambient_dim()) {
    throw DomainError("apply_map: map has " + std::to_string(m.cols()) +
                      " columns but the subspace lives in dimension " +
                      std::to_string(s.ambient_dim()));
  }
  return Subspace::span(multiply(s.basis(), transpose(m)));
}

}  // namespace wwrel
