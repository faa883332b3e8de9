#include "cohesion/gf.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "cohesion/error.hpp"

namespace cohesion {

namespace {

int modp(long v, int p) {
  const long r = v % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

void trim(std::vector<int>& poly) {
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
}

int inverse_mod(int a, int p) {
  for (int x = 1; x < p; ++x) {
    if ((static_cast<long>(a) * x) % p == 1) return x;
  }
  throw Error(ErrorKind::internal, "no inverse modulo p");
}

// Remainder of a divided by a nonzero polynomial d over GF(p).
std::vector<int> poly_rem(std::vector<int> a, std::span<const int> d, int p) {
  std::vector<int> div(d.begin(), d.end());
  trim(div);
  trim(a);
  const int lead_inv = inverse_mod(div.back(), p);
  while (a.size() >= div.size()) {
    const std::size_t shift = a.size() - div.size();
    const int factor = static_cast<int>((static_cast<long>(a.back()) * lead_inv) % p);
    for (std::size_t i = 0; i < div.size(); ++i) {
      a[shift + i] = modp(a[shift + i] - static_cast<long>(factor) * div[i], p);
    }
    trim(a);
  }
  return a;
}

std::vector<int> label_to_poly(std::uint64_t label, int p, int len) {
  std::vector<int> c(static_cast<std::size_t>(len), 0);
  for (int i = 0; i < len; ++i) {
    c[static_cast<std::size_t>(i)] = static_cast<int>(label % static_cast<std::uint64_t>(p));
    label /= static_cast<std::uint64_t>(p);
  }
  return c;
}

std::vector<int> prime_factors(int v) {
  std::vector<int> f;
  for (int d = 2; static_cast<long>(d) * d <= v; ++d) {
    if (v % d == 0) {
      f.push_back(d);
      while (v % d == 0) v /= d;
    }
  }
  if (v > 1) f.push_back(v);
  return f;
}

}  // namespace

bool is_prime(int v) {
  if (v < 2) return false;
  for (int d = 2; static_cast<long>(d) * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

bool prime_power(int v, int* p, int* m) {
  if (v < 2) return false;
  const auto f = prime_factors(v);
  if (f.size() != 1) return false;
  int e = 0;
  for (int r = v; r > 1; r /= f[0]) ++e;
  if (p) *p = f[0];
  if (m) *m = e;
  return true;
}

bool is_irreducible(std::span<const int> poly, int p) {
  std::vector<int> f(poly.begin(), poly.end());
  trim(f);
  const int deg = static_cast<int>(f.size()) - 1;
  if (deg < 1) return false;
  for (int d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= static_cast<std::uint64_t>(p);
    for (std::uint64_t lower = 0; lower < count; ++lower) {
      auto g = label_to_poly(lower, p, d);
      g.push_back(1);
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<int> poly_mulmod(std::span<const int> a, std::span<const int> b, std::span<const int> modulus, int p) {
  std::vector<int> prod(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = modp(prod[i + j] + static_cast<long>(a[i]) * b[j], p);
    }
  }
  trim(prod);
  const std::size_t deg = modulus.size() - 1;
  if (prod.size() > deg) prod = poly_rem(std::move(prod), modulus, p);
  prod.resize(deg, 0);
  return prod;
}

FiniteField FiniteField::make(int p, int m, std::optional<std::vector<int>> modulus) {
  if (!is_prime(p)) throw Error(ErrorKind::invalid_argument, "characteristic " + std::to_string(p) + " is not prime");
  if (m < 1) throw Error(ErrorKind::invalid_argument, "extension degree must be >= 1");
  long q = 1;
  for (int i = 0; i < m; ++i) {
    q *= p;
    if (q > kMaxOrder) throw Error(ErrorKind::size_limit, "field order exceeds 2^16");
  }

  FiniteField f;
  f.p_ = p;
  f.m_ = m;
  f.q_ = static_cast<int>(q);

  if (modulus) {
    auto mod = *modulus;
    if (static_cast<int>(mod.size()) != m + 1 || mod.back() != 1) {
      throw Error(ErrorKind::invalid_argument, "modulus must be monic of degree m");
    }
    for (int c : mod) {
      if (c < 0 || c >= p) throw Error(ErrorKind::invalid_argument, "modulus coefficient outside 0..p-1");
    }
    if (!is_irreducible(mod, p)) throw Error(ErrorKind::invalid_argument, "modulus is not irreducible");
    f.modulus_ = std::move(mod);
  } else if (m == 1) {
    f.modulus_ = {0, 1};
  } else {
    for (long lower = 0; lower < q; ++lower) {
      auto cand = label_to_poly(static_cast<std::uint64_t>(lower), p, m);
      cand.push_back(1);
      if (is_irreducible(cand, p)) {
        f.modulus_ = std::move(cand);
        break;
      }
    }
  }

  // Primitive element: smallest label of multiplicative order q-1, tested
  // with the table-free multiplication.
  const int group = f.q_ - 1;
  const auto factors = prime_factors(group);
  auto slow_pow = [&](Element a, long e) {
    std::vector<int> result(static_cast<std::size_t>(m), 0);
    result[0] = 1;
    auto base = label_to_poly(a, p, m);
    while (e > 0) {
      if (e & 1) result = poly_mulmod(result, base, f.modulus_, p);
      base = poly_mulmod(base, base, f.modulus_, p);
      e >>= 1;
    }
    return result;
  };
  auto is_one = [](const std::vector<int>& v) {
    return v[0] == 1 && std::all_of(v.begin() + 1, v.end(), [](int c) { return c == 0; });
  };
  f.primitive_ = 0;
  for (Element a = 1; a < static_cast<Element>(f.q_); ++a) {
    if (group == 1) {
      f.primitive_ = 1;
      break;
    }
    bool ok = true;
    for (int r : factors) {
      if (is_one(slow_pow(a, group / r))) {
        ok = false;
        break;
      }
    }
    if (ok) {
      f.primitive_ = a;
      break;
    }
  }
  if (f.primitive_ == 0) throw Error(ErrorKind::internal, "no primitive element found");

  f.exp_.assign(static_cast<std::size_t>(2 * group), 0);
  f.log_.assign(static_cast<std::size_t>(f.q_), 0);
  auto cur = label_to_poly(1, p, m);
  const auto alpha = label_to_poly(f.primitive_, p, m);
  for (int i = 0; i < group; ++i) {
    const Element label = f.from_coeffs(cur);
    f.exp_[static_cast<std::size_t>(i)] = label;
    f.exp_[static_cast<std::size_t>(i + group)] = label;
    f.log_[label] = static_cast<std::uint32_t>(i);
    cur = poly_mulmod(cur, alpha, f.modulus_, p);
  }

  if (f.q_ <= 256) {
    f.add_table_.resize(static_cast<std::size_t>(f.q_) * static_cast<std::size_t>(f.q_));
    for (int a = 0; a < f.q_; ++a) {
      for (int b = 0; b < f.q_; ++b) {
        const auto ca = f.coeffs(static_cast<Element>(a));
        const auto cb = f.coeffs(static_cast<Element>(b));
        std::vector<int> s(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) s[static_cast<std::size_t>(i)] = (ca[static_cast<std::size_t>(i)] + cb[static_cast<std::size_t>(i)]) % p;
        f.add_table_[static_cast<std::size_t>(a) * static_cast<std::size_t>(f.q_) + static_cast<std::size_t>(b)] = f.from_coeffs(s);
      }
    }
  }
  return f;
}

Element FiniteField::add(Element a, Element b) const {
  if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * static_cast<std::size_t>(q_) + b];
  if (p_ == 2) return a ^ b;
  Element out = 0;
  Element place = 1;
  for (int i = 0; i < m_; ++i) {
    const Element d = (a % static_cast<Element>(p_) + b % static_cast<Element>(p_)) % static_cast<Element>(p_);
    out += d * place;
    place *= static_cast<Element>(p_);
    a /= static_cast<Element>(p_);
    b /= static_cast<Element>(p_);
  }
  return out;
}

Element FiniteField::neg(Element a) const {
  if (p_ == 2) return a;
  Element out = 0;
  Element place = 1;
  for (int i = 0; i < m_; ++i) {
    const Element d = a % static_cast<Element>(p_);
    out += ((static_cast<Element>(p_) - d) % static_cast<Element>(p_)) * place;
    place *= static_cast<Element>(p_);
    a /= static_cast<Element>(p_);
  }
  return out;
}

Element FiniteField::inv(Element a) const {
  if (a == 0) throw Error(ErrorKind::invalid_argument, "zero has no inverse");
  const std::uint32_t group = static_cast<std::uint32_t>(q_ - 1);
  return exp_[(group - log_[a]) % group];
}

Element FiniteField::pow(Element a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t group = static_cast<std::uint64_t>(q_ - 1);
  return exp_[static_cast<std::size_t>((static_cast<std::uint64_t>(log_[a]) * (e % group)) % group)];
}

std::vector<int> FiniteField::coeffs(Element a) const { return label_to_poly(a, p_, m_); }

Element FiniteField::from_coeffs(std::span<const int> coeffs) const {
  Element out = 0;
  Element place = 1;
  for (std::size_t i = 0; i < static_cast<std::size_t>(m_); ++i) {
    const int c = i < coeffs.size() ? coeffs[i] : 0;
    out += static_cast<Element>(c) * place;
    place *= static_cast<Element>(p_);
  }
  return out;
}

std::string FiniteField::poly_string(Element a) const {
  if (a == 0) return "0";
  const auto c = coeffs(a);
  std::string out;
  for (int i = m_ - 1; i >= 0; --i) {
    const int v = c[static_cast<std::size_t>(i)];
    if (v == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0 || v != 1) out += std::to_string(v);
    if (i >= 1) out += "z";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

std::vector<std::vector<Element>> FiniteField::addition_table() const {
  std::vector<std::vector<Element>> t(static_cast<std::size_t>(q_), std::vector<Element>(static_cast<std::size_t>(q_)));
  for (int a = 0; a < q_; ++a) {
    for (int b = 0; b < q_; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = add(static_cast<Element>(a), static_cast<Element>(b));
  }
  return t;
}

std::vector<std::vector<Element>> FiniteField::multiplication_table() const {
  std::vector<std::vector<Element>> t(static_cast<std::size_t>(q_), std::vector<Element>(static_cast<std::size_t>(q_)));
  for (int a = 0; a < q_; ++a) {
    for (int b = 0; b < q_; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = mul(static_cast<Element>(a), static_cast<Element>(b));
  }
  return t;
}

std::string modulus_string(const FiniteField& field) {
  std::string poly;
  for (int i = field.degree(); i >= 0; --i) {
    const int c = field.modulus()[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!poly.empty()) poly += "+";
    if (i == 0 || c != 1) poly += std::to_string(c);
    if (i >= 1) poly += "z";
    if (i >= 2) poly += "^" + std::to_string(i);
  }
  return poly;
}

std::string emit_tables(const FiniteField& field) {
  if (field.order() > 64) throw Error(ErrorKind::size_limit, "table printing is limited to q <= 64");
  const int width = field.order() > 10 ? 2 : 1;
  std::ostringstream os;
  auto emit = [&](const char* op, const std::vector<std::vector<Element>>& t) {
    os << std::setw(width) << op << " |";
    for (int b = 0; b < field.order(); ++b) os << ' ' << std::setw(width) << b;
    os << '\n' << std::string(static_cast<std::size_t>(width), '-') << "-+"
       << std::string(static_cast<std::size_t>((width + 1) * field.order()), '-') << '\n';
    for (int a = 0; a < field.order(); ++a) {
      os << std::setw(width) << a << " |";
      for (Element v : t[static_cast<std::size_t>(a)]) os << ' ' << std::setw(width) << v;
      os << '\n';
    }
  };
  os << "GF(" << field.order() << ")";
  if (field.degree() > 1) os << " modulus " << modulus_string(field);
  os << ", primitive element " << field.primitive() << "\n\naddition\n";
  emit("+", field.addition_table());
  os << "\nmultiplication\n";
  emit("*", field.multiplication_table());
  return os.str();
}

FieldMatrix FieldMatrix::from_rows(const std::vector<std::vector<Element>>& rows) {
  FieldMatrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows.front().size()));
  for (int r = 0; r < m.rows; ++r) {
    if (static_cast<int>(rows[static_cast<std::size_t>(r)].size()) != m.cols) {
      throw Error(ErrorKind::shape_mismatch, "ragged matrix rows");
    }
    for (int c = 0; c < m.cols; ++c) m.at(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }
  return m;
}

std::vector<Element> FieldMatrix::row(int r) const {
  return {data.begin() + static_cast<std::ptrdiff_t>(r) * cols, data.begin() + static_cast<std::ptrdiff_t>(r + 1) * cols};
}

std::vector<Element> FieldMatrix::column(int c) const {
  std::vector<Element> out(static_cast<std::size_t>(rows));
  for (int r = 0; r < rows; ++r) out[static_cast<std::size_t>(r)] = at(r, c);
  return out;
}

FieldMatrix FieldMatrix::select_columns(std::span<const int> sel) const {
  FieldMatrix out(rows, static_cast<int>(sel.size()));
  for (int r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < sel.size(); ++j) out.at(r, static_cast<int>(j)) = at(r, sel[j]);
  }
  return out;
}

int rank(const FiniteField& field, FieldMatrix m) {
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int pivot = -1;
    for (int i = r; i < m.rows; ++i) {
      if (m.at(i, c) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != r) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(r, j));
    }
    const Element inv = field.inv(m.at(r, c));
    for (int j = c; j < m.cols; ++j) m.at(r, j) = field.mul(m.at(r, j), inv);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      const Element factor = m.at(i, c);
      for (int j = c; j < m.cols; ++j) m.at(i, j) = field.sub(m.at(i, j), field.mul(factor, m.at(r, j)));
    }
    ++r;
  }
  return r;
}

}  // namespace cohesion
