#include "cohesion/codes.hpp"

#include <algorithm>
#include <sstream>

#include "cohesion/error.hpp"

namespace cohesion {

namespace {

std::uint64_t checked_count(const LinearCode& code) {
  const std::uint64_t count = code.codeword_count();
  if (count == 0 || count > kMaxCodewords) {
    std::ostringstream os;
    os << "code has " << code.q() << "^" << code.k() << " codewords, above the 2^20 enumeration limit";
    throw Error(ErrorKind::size_limit, os.str());
  }
  return count;
}

void encode_index(const LinearCode& code, std::uint64_t index, std::span<Element> out,
                  std::vector<Element>& message) {
  const int k = code.k();
  const auto q = static_cast<std::uint64_t>(code.q());
  for (int i = k - 1; i >= 0; --i) {
    message[static_cast<std::size_t>(i)] = static_cast<Element>(index % q);
    index /= q;
  }
  const auto& f = code.field();
  const auto& g = code.generator();
  for (int c = 0; c < code.n(); ++c) {
    Element acc = 0;
    for (int r = 0; r < k; ++r) acc = f.add(acc, f.mul(message[static_cast<std::size_t>(r)], g.at(r, c)));
    out[static_cast<std::size_t>(c)] = acc;
  }
}

}  // namespace

LinearCode::LinearCode(FiniteField field, FieldMatrix generator)
    : field_(std::move(field)), generator_(std::move(generator)) {
  if (generator_.rows < 1 || generator_.cols < 1) throw Error(ErrorKind::invalid_argument, "empty generator matrix");
  if (generator_.rows > generator_.cols) throw Error(ErrorKind::invalid_argument, "generator has more rows than columns");
  for (Element e : generator_.data) {
    if (!field_.contains(e)) throw Error(ErrorKind::invalid_argument, "generator entry outside the field");
  }
  if (rank(field_, generator_) != generator_.rows) {
    throw Error(ErrorKind::invalid_argument, "generator rows are linearly dependent");
  }
}

std::vector<Element> LinearCode::encode(std::span<const Element> message) const {
  if (message.size() != static_cast<std::size_t>(k())) throw Error(ErrorKind::shape_mismatch, "message length != k");
  std::vector<Element> out(static_cast<std::size_t>(n()), 0);
  for (int c = 0; c < n(); ++c) {
    Element acc = 0;
    for (int r = 0; r < k(); ++r) acc = field_.add(acc, field_.mul(message[static_cast<std::size_t>(r)], generator_.at(r, c)));
    out[static_cast<std::size_t>(c)] = acc;
  }
  return out;
}

std::uint64_t LinearCode::codeword_count() const {
  std::uint64_t c = 1;
  for (int i = 0; i < k(); ++i) {
    if (c > (~std::uint64_t{0}) / static_cast<std::uint64_t>(q())) return 0;
    c *= static_cast<std::uint64_t>(q());
  }
  return c;
}

std::vector<Element> rs_evaluation_points(const FiniteField& field) {
  std::vector<Element> pts{0};
  for (int i = 0; i < field.order() - 1; ++i) pts.push_back(field.alpha_pow(static_cast<std::uint64_t>(i)));
  return pts;
}

LinearCode rs_generator(const FiniteField& field, int k) {
  if (k < 1 || k > field.order()) {
    throw Error(ErrorKind::invalid_argument, "message length k must satisfy 1 <= k <= q");
  }
  return rs_generator(field, k, rs_evaluation_points(field));
}

LinearCode rs_generator(const FiniteField& field, int k, std::span<const Element> points) {
  const int n = static_cast<int>(points.size());
  if (k < 1 || k > n) throw Error(ErrorKind::invalid_argument, "message length k must satisfy 1 <= k <= n");
  std::vector<Element> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorKind::invalid_argument, "evaluation points must be distinct");
  }
  FieldMatrix g(k, n);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < n; ++c) g.at(r, c) = field.pow(points[static_cast<std::size_t>(c)], static_cast<std::uint64_t>(r));
  }
  return LinearCode(field, std::move(g));
}

CodewordList enumerate_codewords(const LinearCode& code, Execution exec) {
  const std::uint64_t count = checked_count(code);
  CodewordList out;
  out.n = code.n();
  out.flat.assign(count * static_cast<std::uint64_t>(code.n()), 0);
  const auto n = static_cast<std::size_t>(code.n());
  if (exec == Execution::serial) {
    std::vector<Element> message(static_cast<std::size_t>(code.k()));
    for (std::uint64_t i = 0; i < count; ++i) {
      encode_index(code, i, std::span<Element>(out.flat.data() + i * n, n), message);
    }
    return out;
  }
#pragma omp parallel
  {
    std::vector<Element> message(static_cast<std::size_t>(code.k()));
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
      encode_index(code, static_cast<std::uint64_t>(i),
                   std::span<Element>(out.flat.data() + static_cast<std::size_t>(i) * n, n), message);
    }
  }
  return out;
}

CodeParams min_distance(const LinearCode& code, Execution exec) {
  const std::uint64_t count = checked_count(code);
  int best = code.n();
  if (exec == Execution::serial) {
    std::vector<Element> message(static_cast<std::size_t>(code.k()));
    std::vector<Element> word(static_cast<std::size_t>(code.n()));
    for (std::uint64_t i = 1; i < count; ++i) {
      encode_index(code, i, word, message);
      best = std::min(best, static_cast<int>(std::count_if(word.begin(), word.end(), [](Element e) { return e != 0; })));
    }
  } else {
#pragma omp parallel reduction(min : best)
    {
      std::vector<Element> message(static_cast<std::size_t>(code.k()));
      std::vector<Element> word(static_cast<std::size_t>(code.n()));
#pragma omp for schedule(static)
      for (std::int64_t i = 1; i < static_cast<std::int64_t>(count); ++i) {
        encode_index(code, static_cast<std::uint64_t>(i), word, message);
        best = std::min(best, static_cast<int>(std::count_if(word.begin(), word.end(), [](Element e) { return e != 0; })));
      }
    }
  }
  CodeParams params{code.n(), code.k(), code.q(), best, false};
  params.is_mds = best == code.n() - code.k() + 1;
  return params;
}

bool k_column_independence(const LinearCode& code) {
  const int n = code.n();
  const int k = code.k();
  if (binomial(n, k) > kMaxColumnSubsets) {
    throw Error(ErrorKind::size_limit, "too many column subsets to test exhaustively");
  }
  std::vector<int> cols(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cols[static_cast<std::size_t>(i)] = i;
  while (true) {
    if (rank(code.field(), code.generator().select_columns(cols)) != k) return false;
    int i = k - 1;
    while (i >= 0 && cols[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return true;
    ++cols[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) cols[static_cast<std::size_t>(j)] = cols[static_cast<std::size_t>(j - 1)] + 1;
  }
}

JointDistribution code_to_distribution(const LinearCode& code) {
  const auto words = enumerate_codewords(code);
  const double mass = 1.0 / static_cast<double>(words.size());
  std::vector<Atom> atoms;
  atoms.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto w = words[i];
    atoms.push_back({std::vector<Symbol>(w.begin(), w.end()), mass});
  }
  return JointDistribution::from_atoms(code.n(), code.q(), std::move(atoms), JointDistribution::Normalize::assume_valid);
}

}  // namespace cohesion
