#include "cohesion/explore.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

#include "cohesion/error.hpp"
#include "cohesion/kernels.hpp"

namespace cohesion {

namespace {

constexpr std::size_t kBlock = 4096;
constexpr std::uint64_t kSearchStream = 0x9e3779b97f4a7c15ULL;
constexpr double kImprovement = 1e-12;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SubsetEntropyTable dense_table(int n, int q, std::span<const double> masses) {
  thread_local std::vector<double> scratch;
  std::vector<double> values(std::size_t{1} << n);
  subset_entropies_dense(n, q, masses, values, scratch);
  const double scale = 1.0 / std::log(static_cast<double>(q));
  for (double& v : values) v *= scale;
  return SubsetEntropyTable(n, static_cast<double>(q), std::move(values));
}

double normalizer(int n, int k) { return static_cast<double>(binomial(n - 1, k - 1)); }

// Endpoints of a*x + b*y = c inside [0,X] x [0,Y].
void clip(OverlayLine& line, double xmax, double ymax) {
  std::vector<std::pair<double, double>> pts;
  const double eps = 1e-12;
  auto keep = [&](double x, double y) {
    if (x >= -eps && x <= xmax + eps && y >= -eps && y <= ymax + eps) pts.emplace_back(x, y);
  };
  if (line.b != 0.0) {
    keep(0.0, line.c / line.b);
    keep(xmax, (line.c - line.a * xmax) / line.b);
  }
  if (line.a != 0.0) {
    keep(line.c / line.a, 0.0);
    keep((line.c - line.b * ymax) / line.a, ymax);
  }
  if (pts.empty()) pts.emplace_back(0.0, 0.0);
  std::sort(pts.begin(), pts.end());
  line.x0 = pts.front().first;
  line.y0 = pts.front().second;
  line.x1 = pts.back().first;
  line.y1 = pts.back().second;
}

}  // namespace

const char* to_string(ScanMode mode) {
  switch (mode) {
    case ScanMode::grid: return "grid";
    case ScanMode::random: return "random";
    case ScanMode::search: return "search";
  }
  return "unknown";
}

ScanMode parse_scan_mode(std::string_view text) {
  if (text == "grid") return ScanMode::grid;
  if (text == "random") return ScanMode::random;
  if (text == "search" || text == "local-search") return ScanMode::search;
  throw Error(ErrorKind::invalid_argument, "unknown scan mode '" + std::string(text) + "'");
}

std::string Measure::name() const { return (kind == Kind::cohesion ? "c" : "d") + std::to_string(k); }

std::vector<Measure> parse_measures(std::string_view text, int n) {
  std::vector<Measure> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok.size() < 2 || (tok[0] != 'c' && tok[0] != 'd')) {
      throw Error(ErrorKind::invalid_argument, "bad measure '" + std::string(tok) + "' (expected c<k> or d<k>)");
    }
    int k = 0;
    for (char ch : tok.substr(1)) {
      if (ch < '0' || ch > '9' || k > 1000) throw Error(ErrorKind::invalid_argument, "bad measure '" + std::string(tok) + "'");
      k = k * 10 + (ch - '0');
    }
    if (k < 1 || k > n - 1) {
      throw Error(ErrorKind::invalid_argument,
                  "measure '" + std::string(tok) + "' needs an order in 1.." + std::to_string(n - 1));
    }
    Measure m{tok[0] == 'c' ? Measure::Kind::cohesion : Measure::Kind::divergence, k};
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    pos = end + 1;
  }
  return out;
}

std::string format_measures(std::span<const Measure> measures) {
  std::string s;
  for (const auto& m : measures) {
    if (!s.empty()) s += ',';
    s += m.name();
  }
  return s;
}

std::size_t ScanConfig::cells() const { return outcome_count(n, q, kMaxProjectionBits); }

void ScanConfig::validate() const {
  if (n < 2 || n > 20) throw Error(ErrorKind::invalid_argument, "scan needs 2 <= n <= 20");
  if (q < 2) throw Error(ErrorKind::invalid_argument, "scan needs q >= 2");
  cells();
  if (resolution < 1) throw Error(ErrorKind::invalid_argument, "resolution must be >= 1");
  if (sample_count < 1) throw Error(ErrorKind::invalid_argument, "sample count must be >= 1");
  if (restarts < 1) throw Error(ErrorKind::invalid_argument, "restarts must be >= 1");
  if (measures.empty()) throw Error(ErrorKind::invalid_argument, "no measures requested");
  for (const auto& m : measures) {
    if (m.k < 1 || m.k > n - 1) throw Error(ErrorKind::invalid_argument, "measure " + m.name() + " out of range");
  }
}

std::string ScanConfig::echo() const {
  std::ostringstream os;
  os << "n=" << n << " q=" << q << " mode=" << to_string(mode) << " resolution=" << resolution
     << " samples=" << sample_count << " seed=" << seed << " measures=" << format_measures(measures)
     << " restarts=" << restarts << " ipf_tol=" << ipf.tol << " ipf_max_sweeps=" << ipf.max_sweeps;
  return os.str();
}

std::uint64_t grid_point_count(std::size_t cells, int resolution) {
  // C(resolution + cells - 1, resolution), multiplicative form
  unsigned __int128 r = 1;
  const auto top = static_cast<unsigned __int128>(cells) - 1;
  for (int i = 1; i <= resolution; ++i) {
    r = r * (top + static_cast<unsigned __int128>(i)) / static_cast<unsigned __int128>(i);
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

GridEnumerator::GridEnumerator(std::size_t cells, int resolution)
    : resolution_(resolution), count_(grid_point_count(cells, resolution)), parts_(cells, 0) {
  if (cells < 1 || resolution < 1) throw Error(ErrorKind::invalid_argument, "grid needs cells >= 1 and resolution >= 1");
  parts_[0] = resolution;
}

void GridEnumerator::masses(std::span<double> out) const {
  const double r = static_cast<double>(resolution_);
  for (std::size_t i = 0; i < parts_.size(); ++i) out[i] = static_cast<double>(parts_[i]) / r;
}

bool GridEnumerator::next() {
  const std::size_t last = parts_.size() - 1;
  if (last == 0) return false;
  const int tail = parts_[last];
  parts_[last] = 0;
  std::size_t i = last;
  while (i > 0 && parts_[i - 1] == 0) --i;
  if (i == 0) {
    parts_[last] = tail;
    return false;
  }
  --parts_[i - 1];
  parts_[i] = tail + 1;
  return true;
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) : state_(seed) {
  std::uint64_t s = seed ^ (stream * 0xd1b54a32d192ed03ULL);
  state_ = splitmix64(s) ^ stream;
}

std::uint64_t CounterRng::next() { return splitmix64(state_); }

double CounterRng::uniform_open0() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

void random_sample(std::uint64_t seed, std::uint64_t index, std::span<double> out) {
  CounterRng rng(seed, index);
  double total = 0.0;
  for (double& v : out) {
    v = -std::log(rng.uniform_open0());
    total += v;
  }
  for (double& v : out) v /= total;
}

ViolationCounts& ViolationCounts::operator+=(const ViolationCounts& o) {
  polymatroid_upper += o.polymatroid_upper;
  polymatroid_lower += o.polymatroid_lower;
  constant += o.constant;
  quad += o.quad;
  divergence += o.divergence;
  return *this;
}

ViolationCounts cohesion_violations(int n, std::span<const double> c) {
  ViolationCounts v;
  const double tol = kBoundTolerance;
  auto at = [&](int k) { return c[static_cast<std::size_t>(k - 1)]; };
  for (int k = 1; k <= n - 2; ++k) {
    if (k * at(k + 1) > (n - k) * at(k) + tol) ++v.polymatroid_upper;
    if (k * at(n - k - 1) > (n - k) * at(n - k) + tol) ++v.polymatroid_lower;
  }
  for (int k = 1; k <= n - 1; ++k) {
    if (at(k) > constant_bound(n, k) + tol) ++v.constant;
  }
  if (n == 4) {
    if (at(1) + at(3) > 4.0 + tol) ++v.quad;
    if (at(2) + 3.0 * at(1) > 12.0 + tol) ++v.quad;
    if (at(2) + 3.0 * at(3) > 12.0 + tol) ++v.quad;
  }
  return v;
}

PointEval evaluate_point(const ScanConfig& cfg, std::span<const double> masses) {
  const int n = cfg.n;
  const auto table = dense_table(n, cfg.q, masses);
  PointEval pt;
  for (int k = 1; k <= n - 1; ++k) pt.cohesion.push_back(cohesion_k(table, k));
  pt.violations = cohesion_violations(n, pt.cohesion);
  for (const auto& m : cfg.measures) {
    const double c = pt.cohesion[static_cast<std::size_t>(m.k - 1)];
    const double nc = c / normalizer(n, m.k);
    pt.normalized.push_back(nc);
    if (m.kind == Measure::Kind::cohesion) {
      pt.values.push_back(c);
      continue;
    }
    const auto proj = maxent_projection_dense(n, cfg.q, masses, m.k, cfg.ipf);
    const double d = proj.divergence(static_cast<double>(cfg.q));
    pt.values.push_back(d);
    if (!proj.converged) pt.ipf_converged = false;
    if (d > nc + cfg.ipf.tol + kDivergenceBoundSlack) ++pt.violations.divergence;
  }
  return pt;
}

double measure_value(const ScanConfig& cfg, const Measure& m, std::span<const double> masses) {
  if (m.kind == Measure::Kind::cohesion) return cohesion_k(dense_table(cfg.n, cfg.q, masses), m.k);
  return maxent_projection_dense(cfg.n, cfg.q, masses, m.k, cfg.ipf).divergence(static_cast<double>(cfg.q));
}

ScanSummary run_scan(const ScanConfig& cfg, const PointSink& sink, Execution exec) {
  cfg.validate();
  if (cfg.mode == ScanMode::search) throw Error(ErrorKind::invalid_argument, "search mode runs through local_search_max");
  const std::size_t cells = cfg.cells();

  std::uint64_t total = cfg.sample_count;
  std::optional<GridEnumerator> grid;
  if (cfg.mode == ScanMode::grid) {
    const std::uint64_t count = grid_point_count(cells, cfg.resolution);
    if (count > kMaxGridPoints) {
      throw Error(ErrorKind::size_limit, "grid has " + std::to_string(count) + " points, above the 10^8 limit");
    }
    if (count > kLargeGridPoints && !cfg.allow_large_grid) {
      throw Error(ErrorKind::size_limit,
                  "grid has " + std::to_string(count) + " points; pass the large-grid flag to run it");
    }
    grid.emplace(cells, cfg.resolution);
    total = count;
  }

  ScanSummary sum;
  sum.best.resize(cfg.measures.size());
  std::vector<double> buf(kBlock * cells);
  std::vector<PointEval> evals(kBlock);

  for (std::uint64_t start = 0; start < total; start += kBlock) {
    const auto m = static_cast<std::int64_t>(std::min<std::uint64_t>(kBlock, total - start));
    if (grid) {
      for (std::int64_t i = 0; i < m; ++i) {
        grid->masses(std::span<double>(buf.data() + static_cast<std::size_t>(i) * cells, cells));
        grid->next();
      }
    }
    auto eval_one = [&](std::int64_t i) {
      std::span<double> pt(buf.data() + static_cast<std::size_t>(i) * cells, cells);
      if (!grid) random_sample(cfg.seed, start + static_cast<std::uint64_t>(i), pt);
      evals[static_cast<std::size_t>(i)] = evaluate_point(cfg, pt);
    };
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
      for (std::int64_t i = 0; i < m; ++i) eval_one(i);
    } else {
      for (std::int64_t i = 0; i < m; ++i) eval_one(i);
    }
    for (std::int64_t i = 0; i < m; ++i) {
      const auto& pt = evals[static_cast<std::size_t>(i)];
      const std::uint64_t index = start + static_cast<std::uint64_t>(i);
      std::span<const double> masses(buf.data() + static_cast<std::size_t>(i) * cells, cells);
      ++sum.points;
      sum.violations += pt.violations;
      if (!pt.ipf_converged) ++sum.ipf_not_converged;
      for (std::size_t j = 0; j < pt.values.size(); ++j) {
        auto& best = sum.best[j];
        if (pt.values[j] > best.value) {
          best.value = pt.values[j];
          best.index = index;
          best.masses.assign(masses.begin(), masses.end());
        }
      }
      if (sink) sink(index, masses, pt);
    }
  }
  return sum;
}

namespace {

std::vector<int> round_to_lattice(std::span<const double> x, int units) {
  std::vector<int> counts(x.size());
  std::vector<std::pair<double, std::size_t>> rema(x.size());
  int used = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double scaled = x[i] * units;
    counts[i] = static_cast<int>(std::floor(scaled));
    used += counts[i];
    rema[i] = {scaled - counts[i], i};
  }
  std::stable_sort(rema.begin(), rema.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; used < units; ++i, ++used) ++counts[rema[i % rema.size()].second];
  return counts;
}

RestartResult climb(const ScanConfig& cfg, const Measure& objective, int restart) {
  const std::size_t cells = cfg.cells();
  std::vector<double> start(cells);
  random_sample(cfg.seed ^ kSearchStream, static_cast<std::uint64_t>(restart), start);
  auto counts = round_to_lattice(start, kSearchUnits);
  std::vector<double> x(cells);
  const double unit = 1.0 / kSearchUnits;
  for (std::size_t i = 0; i < cells; ++i) x[i] = counts[i] * unit;

  RestartResult res;
  res.value = measure_value(cfg, objective, x);
  for (int delta = kSearchUnits / 8; delta >= 1; delta /= 2) {
    while (true) {
      double best = res.value + kImprovement;
      std::size_t bi = cells, bj = cells;
      int bt = 0;
      for (std::size_t i = 0; i < cells; ++i) {
        if (counts[i] == 0) continue;
        const int t = std::min(delta, counts[i]);
        for (std::size_t j = 0; j < cells; ++j) {
          if (j == i) continue;
          const double xi = x[i], xj = x[j];
          x[i] = (counts[i] - t) * unit;
          x[j] = (counts[j] + t) * unit;
          const double v = measure_value(cfg, objective, x);
          x[i] = xi;
          x[j] = xj;
          if (v > best) {
            best = v;
            bi = i;
            bj = j;
            bt = t;
          }
        }
      }
      if (bi == cells) break;
      counts[bi] -= bt;
      counts[bj] += bt;
      x[bi] = counts[bi] * unit;
      x[bj] = counts[bj] * unit;
      res.value = best;
      ++res.moves;
    }
  }
  res.masses = std::move(x);
  return res;
}

}  // namespace

SearchResult local_search_max(const ScanConfig& cfg, const Measure& objective, int restarts, Execution exec) {
  cfg.validate();
  if (objective.k < 1 || objective.k > cfg.n - 1) throw Error(ErrorKind::invalid_argument, "objective order out of range");
  if (restarts < 1) throw Error(ErrorKind::invalid_argument, "restarts must be >= 1");
  SearchResult out;
  out.objective = objective;
  out.restarts.resize(static_cast<std::size_t>(restarts));
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int r = 0; r < restarts; ++r) out.restarts[static_cast<std::size_t>(r)] = climb(cfg, objective, r);
  } else {
    for (int r = 0; r < restarts; ++r) out.restarts[static_cast<std::size_t>(r)] = climb(cfg, objective, r);
  }
  for (int r = 0; r < restarts; ++r) {
    const auto& rr = out.restarts[static_cast<std::size_t>(r)];
    if (rr.value > out.value) {
      out.value = rr.value;
      out.masses = rr.masses;
      out.best_restart = r;
    }
  }
  std::ostringstream os;
  os << cfg.echo() << " objective=" << objective.name() << " search_restarts=" << restarts
     << " lattice=1/" << kSearchUnits;
  out.config = os.str();
  return out;
}

std::vector<OverlayLine> cohesion_overlay(int n, std::span<const Measure> measures) {
  std::vector<int> orders;
  for (const auto& m : measures) {
    if (m.kind == Measure::Kind::cohesion) orders.push_back(m.k);
  }
  std::sort(orders.begin(), orders.end());
  std::vector<OverlayLine> lines;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    for (std::size_t j = i + 1; j < orders.size(); ++j) {
      const int a = orders[i];
      const int b = orders[j];
      const std::string xm = "c" + std::to_string(a);
      const std::string ym = "c" + std::to_string(b);
      const double xmax = constant_bound(n, a);
      const double ymax = constant_bound(n, b);
      auto add = [&](const char* kind, int k, double ca, double cb, double cc) {
        OverlayLine l{kind, k, xm, ym, ca, cb, cc};
        clip(l, xmax, ymax);
        lines.push_back(l);
      };
      // k C^(k+1) <= (n-k) C^(k)
      if (b == a + 1) add("polymatroid_upper", a, -(n - a), a, 0.0);
      // k C^(n-k-1) <= (n-k) C^(n-k), here a = n-k-1
      if (b == a + 1 && n - b >= 1 && n - b <= n - 2) add("polymatroid_lower", n - b, n - b, -b, 0.0);
      add("constant", a, 1.0, 0.0, xmax);
      add("constant", b, 0.0, 1.0, ymax);
      if (n == 4) {
        if (a == 1 && b == 3) add("quad", 0, 1.0, 1.0, 4.0);
        if (a == 1 && b == 2) add("quad", 0, 3.0, 1.0, 12.0);
        if (a == 2 && b == 3) add("quad", 0, 1.0, 3.0, 12.0);
      }
    }
  }
  return lines;
}

std::vector<OverlayLine> divergence_overlay(int n, std::span<const Measure> measures) {
  std::vector<OverlayLine> lines;
  for (const auto& m : measures) {
    if (m.kind != Measure::Kind::divergence) continue;
    const double top = constant_bound(n, m.k) / normalizer(n, m.k);
    OverlayLine l{"divergence_bound", m.k, "nc" + std::to_string(m.k), "d" + std::to_string(m.k), -1.0, 1.0, 0.0};
    clip(l, top, top);
    lines.push_back(l);
  }
  return lines;
}

ScatterWriter::ScatterWriter(const std::filesystem::path& dir, const ScanConfig& cfg) : cfg_(cfg), dir_(dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create " + dir_.string() + ": " + ec.message());

  std::string c1 = "index";
  std::string c2 = "index";
  for (std::size_t i = 0; i < cfg.measures.size(); ++i) {
    const auto& m = cfg.measures[i];
    if (m.kind == Measure::Kind::cohesion) {
      cohesion_cols_.push_back(i);
      c1 += "," + m.name();
    } else {
      divergence_cols_.push_back(i);
      c2 += ",nc" + std::to_string(m.k) + ",d" + std::to_string(m.k);
    }
  }

  auto open = [&](std::ofstream& f, const char* name) {
    f.open(dir_ / name);
    if (!f) throw Error(ErrorKind::io, "cannot write " + (dir_ / name).string());
  };
  auto write_overlay = [&](const char* name, const std::string& what, const std::vector<OverlayLine>& lines) {
    std::ofstream f;
    open(f, name);
    header(f, what, "kind = bound family; the line is a*x + b*y = c and points must satisfy a*x + b*y <= c; "
                    "(x0,y0)-(x1,y1) is the segment inside the bound box");
    f << "kind,k,x_measure,y_measure,a,b,c,x0,y0,x1,y1\n";
    for (const auto& l : lines) {
      f << l.kind << ',' << l.k << ',' << l.x_measure << ',' << l.y_measure << ',' << fmt(l.a) << ',' << fmt(l.b)
        << ',' << fmt(l.c) << ',' << fmt(l.x0) << ',' << fmt(l.y0) << ',' << fmt(l.x1) << ',' << fmt(l.y1) << '\n';
    }
  };

  open(cohesion_out_, "cohesion_points.csv");
  header(cohesion_out_, "Cohesion scatter", "index = point index in scan order; c<k> = Cohesion-k");
  cohesion_out_ << c1 << '\n';
  write_overlay("cohesion_overlay.csv", "Cohesion bound lines", cohesion_overlay(cfg.n, cfg.measures));
  if (!divergence_cols_.empty()) {
    open(divergence_out_, "divergence_points.csv");
    header(divergence_out_, "normalized Cohesion vs divergence scatter",
           "index = point index in scan order; nc<k> = Cohesion-k / C(n-1,k-1); d<k> = D(p || p^(k))");
    divergence_out_ << c2 << '\n';
    write_overlay("divergence_overlay.csv", "divergence bound lines", divergence_overlay(cfg.n, cfg.measures));
  }
}

void ScatterWriter::header(std::ofstream& out, const std::string& what, const std::string& columns) {
  out << "# " << what << '\n'
      << "# tool: cohesion " << kToolVersion << '\n'
      << "# config: " << cfg_.echo() << '\n'
      << "# seed: " << cfg_.seed << '\n'
      << "# units: base-q (q=" << cfg_.q << ")\n"
      << "# columns: " << columns << '\n';
}

void ScatterWriter::add(std::uint64_t index, const PointEval& point) {
  cohesion_out_ << index;
  for (std::size_t i : cohesion_cols_) cohesion_out_ << ',' << fmt(point.values[i]);
  cohesion_out_ << '\n';
  if (!divergence_cols_.empty()) {
    divergence_out_ << index;
    for (std::size_t i : divergence_cols_) divergence_out_ << ',' << fmt(point.normalized[i]) << ',' << fmt(point.values[i]);
    divergence_out_ << '\n';
  }
}

void ScatterWriter::close() {
  cohesion_out_.close();
  if (divergence_out_.is_open()) divergence_out_.close();
  if (!cohesion_out_ || (!divergence_cols_.empty() && !divergence_out_)) throw Error(ErrorKind::io, "failed writing scatter files");
}

std::vector<std::filesystem::path> ScatterWriter::files() const {
  std::vector<std::filesystem::path> out{dir_ / "cohesion_points.csv", dir_ / "cohesion_overlay.csv"};
  if (!divergence_cols_.empty()) {
    out.push_back(dir_ / "divergence_points.csv");
    out.push_back(dir_ / "divergence_overlay.csv");
  }
  return out;
}

}  // namespace cohesion
