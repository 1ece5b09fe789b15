#include <CLI11.hpp>
#include <Eigen/Core>
#include <boost/version.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "cubic/constants.hpp"
#include "cubic/gauss.hpp"
#include "cubic/io.hpp"
#include "cubic/moments.hpp"
#include "cubic/parallel.hpp"
#include "cubic/rmt.hpp"

using namespace cubic;

namespace {

constexpr const char* kVersion = "1.0.0";

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kDomain = 3 };

// Thrown for bad flag values that CLI11 cannot see (grids, partitions).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

FieldCtx field_from_q(std::uint64_t q) {
  if (q < 2) throw Error(Errc::NotPrime, std::to_string(q) + " is not a prime power");
  std::uint64_t p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) p = q;
  std::uint32_t a = 0;
  std::uint64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++a;
  }
  if (r != 1) throw Error(Errc::NotPrime, std::to_string(q) + " is not a prime power");
  return make_field(static_cast<std::uint32_t>(p), a);
}

std::vector<double> parse_grid(const std::string& text) {
  // a:b:step or a comma list
  std::vector<double> out;
  try {
    if (text.find(':') != std::string::npos) {
      std::stringstream ss(text);
      std::string a, b, st;
      std::getline(ss, a, ':');
      std::getline(ss, b, ':');
      std::getline(ss, st, ':');
      const double lo = std::stod(a), hi = std::stod(b), step = std::stod(st);
      if (!(step > 0.0) || hi < lo) throw UsageError("grid needs lo <= hi and step > 0");
      const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
      for (long i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
    } else {
      std::stringstream ss(text);
      std::string cell;
      while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
    }
  } catch (const std::invalid_argument&) {
    throw UsageError("cannot parse grid '" + text + "'");
  }
  if (out.empty()) throw UsageError("empty grid");
  return out;
}

// "2,1,1", "1^2 2^1" or "0" for the empty partition
Partition parse_partition(const std::string& text) {
  if (text == "0" || text.empty()) return Partition();
  std::vector<int> parts;
  try {
    if (text.find('^') != std::string::npos) {
      std::stringstream ss(text);
      std::string tok;
      while (ss >> tok) {
        const auto hat = tok.find('^');
        if (hat == std::string::npos) throw UsageError("partition token '" + tok + "' lacks '^'");
        const int j = std::stoi(tok.substr(0, hat)), m = std::stoi(tok.substr(hat + 1));
        if (m < 0) throw UsageError("negative multiplicity");
        parts.insert(parts.end(), static_cast<std::size_t>(m), j);
      }
    } else {
      std::stringstream ss(text);
      std::string cell;
      while (std::getline(ss, cell, ',')) parts.push_back(std::stoi(cell));
    }
  } catch (const std::invalid_argument&) {
    throw UsageError("cannot parse partition '" + text + "'");
  }
  return Partition(parts);
}

Mode parse_mode(const std::string& m) { return m == "sample" ? Mode::Sample : Mode::Exhaustive; }

// Timing fields vary run to run; the content digest leaves them out so
// replays can be compared exactly.
std::string strip_timing(const std::string& body) {
  std::istringstream is(body);
  std::string line, out;
  int drop = -1;
  bool first = true;
  while (std::getline(is, line)) {
    if (first && line.rfind('{', 0) != 0) {
      std::stringstream ss(line);
      std::string cell;
      for (int i = 0; std::getline(ss, cell, ','); ++i) {
        if (cell == "elapsed_ms") drop = i;
      }
    }
    first = false;
    if (line.find("\"elapsed_ms\"") != std::string::npos || line.find("\"wall_time_ms\"") != std::string::npos) {
      continue;
    }
    if (drop >= 0) {
      std::stringstream ss(line);
      std::string cell, kept;
      for (int i = 0; std::getline(ss, cell, ','); ++i) {
        if (i == drop) continue;
        kept += (kept.empty() ? "" : ",") + cell;
      }
      line = kept;
    }
    out += line + '\n';
  }
  return out;
}

struct Context {
  std::vector<std::string> argv;
  std::string command;
  unsigned threads = 1;
  std::optional<std::uint64_t> q;
  std::vector<std::uint64_t> seeds;
  std::map<std::string, std::string> files;  // role -> path
  std::string out_path;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  // Writes the main output to --out (or stdout) and any extra artifacts.
  void emit(const std::string& body, const std::map<std::string, std::string>& extra = {}) {
    Json outputs = Json::array();
    auto write = [&](const std::string& role, const std::string& path, const std::string& content) {
      std::ofstream f(path, std::ios::binary);
      if (!f) throw Error(Errc::DomainError, "cannot write " + path);
      f << content;
      outputs.push_back({{"role", role},
                         {"path", path},
                         {"fnv1a64", digest_hex(content)},
                         {"content_digest", digest_hex(strip_timing(content))},
                         {"bytes", content.size()}});
    };
    if (out_path.empty()) {
      std::cout << body;
    } else {
      write("main", out_path, body);
    }
    for (const auto& [path, content] : extra) write("extra", path, content);
    if (outputs.empty()) return;
    Json m;
    m["tool"] = "cubic";
    m["version"] = kVersion;
    m["command"] = command;
    m["argv"] = argv;
    if (q) m["q"] = *q;
    m["seeds"] = seeds;
    m["threads"] = threads;
    m["libraries"] = {{"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                     std::to_string(EIGEN_MINOR_VERSION)},
                      {"boost", BOOST_LIB_VERSION},
                      {"compiler", __VERSION__}};
    m["wall_time_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    m["outputs"] = outputs;
    const std::string main_path = out_path.empty() ? extra.begin()->first : out_path;
    std::ofstream(main_path + ".manifest.json") << m.dump(2) << '\n';
  }
};

// ---------------------------------------------------------------- lfun

struct LfunArgs {
  std::uint64_t q = 7;
  std::string F;
  int power = 1;
  std::vector<double> s{0.5};
  std::string emit = "json";
};

int cmd_lfun(Context& cx, const LfunArgs& a) {
  const FieldCtx ctx = field_from_q(a.q);
  cx.q = a.q;
  const Poly F = parse_poly(ctx, a.F);
  const Character chi(ctx, F, a.power);
  const LData L = compute_coeffs(ctx, chi, cx.threads);
  std::ostringstream os;
  if (a.emit == "csv") {
    os << "n,a_x,a_y,b_x,b_y\n";
    for (std::size_t n = 0; n < L.a.size(); ++n) {
      os << n << ',' << L.a[n].x << ',' << L.a[n].y << ',';
      if (n < L.b.size()) os << L.b[n].x << ',' << L.b[n].y;
      else os << ',';
      os << '\n';
    }
  } else {
    Json j = ldata_json(ctx, L);
    Json vals = Json::array();
    for (double s : a.s) vals.push_back({{"s", s}, {"L", complex_json(eval_L(L, s))}});
    j["values"] = vals;
    j["omega_abs"] = std::abs(L.omega);
    os << j.dump(2) << '\n';
  }
  cx.emit(os.str());
  return kOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::uint64_t q = 7;
  int deg = 4;
  bool all = false;
  std::uint64_t sample = 0;
  std::uint64_t seed = 1;
  std::string checks = "fe,afe,rh,omega";
};

struct CheckTally {
  std::uint64_t passed = 0, total = 0;
  double worst = 0.0;
};

int cmd_verify(Context& cx, const VerifyArgs& a) {
  const FieldCtx ctx = field_from_q(a.q);
  cx.q = a.q;
  if (a.deg < 1) throw Error(Errc::DomainError, "--deg must be >= 1");
  std::vector<Poly> moduli;
  if (a.all) {
    moduli = enumerate_squarefree(ctx, a.deg);
  } else {
    if (a.sample == 0) throw UsageError("verify needs --all or --sample N");
    cx.seeds.push_back(a.seed);
    const std::uint64_t range = ipow(ctx.q(), static_cast<unsigned>(a.deg));
    for (std::uint64_t i = 0; moduli.size() < a.sample; ++i) {
      auto rng = stream_rng(a.seed, i);
      Poly F = monic_from_rank(ctx, a.deg, rng() % range);
      if (is_squarefree(ctx, F)) moduli.push_back(std::move(F));
    }
  }
  std::vector<std::string> checks;
  {
    std::stringstream ss(a.checks);
    std::string c;
    while (std::getline(ss, c, ',')) {
      if (c != "fe" && c != "afe" && c != "rh" && c != "omega") throw UsageError("unknown check '" + c + "'");
      checks.push_back(c);
    }
  }
  const Character probe(ctx, moduli.front());
  const PrimeTable primes(ctx, std::max(1, euler_degree_needed(probe)));
  const std::size_t n = moduli.size();
  // per-character results, reduced in index order afterwards
  std::vector<std::map<std::string, std::pair<bool, double>>> per(n);
  parallel_chunks(n, cx.threads, [&](std::size_t i) {
    const Character chi(ctx, moduli[i]);
    const LData L = compute_coeffs_euler(ctx, chi, primes);
    for (const auto& c : checks) {
      if (c == "fe") {
        const LData Lb = compute_coeffs_euler(ctx, chi.conj(), primes);
        per[i][c] = {check_fe_exact(L, Lb), 0.0};
      } else if (c == "afe") {
        double worst = 0.0;
        for (double s : {0.2, 1.0 / 3.0, 0.5, 2.0 / 3.0, 0.8}) {
          const Complex want = eval_L(L, s);
          for (int A = 0; A <= L.genus; ++A) {
            const Complex got = L.delta == 1 ? afe_odd(L, s, A).total() : afe_even(L, s, A).total;
            worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
          }
        }
        per[i][c] = {worst < 1e-9, worst};
      } else if (c == "rh") {
        const double d = check_rh_roots(L);
        per[i][c] = {d < 1e-8, d};
      } else {
        const Eisenstein qg(static_cast<std::int64_t>(ipow(ctx.q(), static_cast<unsigned>(L.genus))), 0);
        const bool unit = L.b[L.genus] * L.b[L.genus].conj() == qg;
        const double d = std::abs(omega_from_gauss(ctx, chi) - L.omega);
        per[i][c] = {unit && d < 1e-6, d};
      }
    }
  });
  std::map<std::string, CheckTally> tally;
  for (const auto& row : per) {
    for (const auto& [c, r] : row) {
      auto& t = tally[c];
      ++t.total;
      t.passed += r.first;
      t.worst = std::max(t.worst, r.second);
    }
  }
  std::ostringstream os;
  os << "check,passed,total,max_deviation\n";
  bool ok = true;
  for (const auto& c : checks) {
    const auto& t = tally[c];
    ok = ok && t.passed == t.total;
    os << c << ',' << t.passed << ',' << t.total << ',' << fmt_double(t.worst) << '\n';
  }
  cx.emit(os.str());
  return ok ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- moment, scan-s

struct MomentArgs {
  std::uint64_t q = 7;
  std::vector<int> g{1};
  double s = 0.5;
  std::string grid;
  std::string mode = "exhaustive";
  std::uint64_t n = 0;
  std::uint64_t seed = 1;
  bool allow_large = false;
  std::string emit = "csv";
  std::string svg;
};

MomentOptions moment_options(Context& cx, const MomentArgs& a) {
  MomentOptions o;
  o.mode = parse_mode(a.mode);
  o.sample_size = a.n;
  o.seed = a.seed;
  o.threads = cx.threads;
  o.allow_large = a.allow_large;
  if (o.mode == Mode::Sample) cx.seeds.push_back(a.seed);
  return o;
}

int cmd_moment(Context& cx, const MomentArgs& a) {
  const FieldCtx ctx = field_from_q(a.q);
  cx.q = a.q;
  const MomentOptions o = moment_options(cx, a);
  std::ostringstream os;
  Json arr = Json::array();
  if (a.emit == "csv") os << kMomentCsvHeader << '\n';
  for (int g : a.g) {
    const MomentReport r = moment(ctx, g, a.s, o);
    if (a.emit == "csv") write_moment_csv_row(os, r);
    else arr.push_back(moment_json(r));
  }
  if (a.emit != "csv") os << (arr.size() == 1 ? arr[0] : arr).dump(2) << '\n';
  cx.emit(os.str());
  return kOk;
}

std::string render_svg(const std::map<int, std::vector<MomentReport>>& series) {
  const double W = 640, H = 400, L = 60, R = 20, T = 20, B = 50;
  double smin = 1e9, smax = -1e9, rmin = 1e9, rmax = -1e9;
  for (const auto& [g, rows] : series) {
    for (const auto& r : rows) {
      smin = std::min(smin, r.s);
      smax = std::max(smax, r.s);
      rmin = std::min(rmin, r.ratio());
      rmax = std::max(rmax, r.ratio());
    }
  }
  if (smax <= smin) smax = smin + 1.0;
  if (rmax <= rmin) rmax = rmin + 1.0;
  const double pad = 0.05 * (rmax - rmin);
  rmin -= pad;
  rmax += pad;
  auto X = [&](double s) { return L + (s - smin) / (smax - smin) * (W - L - R); };
  auto Y = [&](double v) { return H - B - (v - rmin) / (rmax - rmin) * (H - T - B); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  if (1.0 / 3.0 >= smin && 1.0 / 3.0 <= smax) {
    os << "<line x1=\"" << X(1.0 / 3.0) << "\" y1=\"" << T << "\" x2=\"" << X(1.0 / 3.0) << "\" y2=\"" << H - B
       << "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
    os << "<text x=\"" << X(1.0 / 3.0) + 4 << "\" y=\"" << T + 12 << "\" fill=\"gray\">s = 1/3</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double s = smin + i * (smax - smin) / 4, v = rmin + i * (rmax - rmin) / 4;
    os << "<text x=\"" << X(s) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << fmt_double(std::round(s * 1000) / 1000) << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << Y(v) + 4 << "\" text-anchor=\"end\">" << fmt_double(std::round(v * 1000) / 1000) << "</text>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">s</text>\n";
  os << "<text x=\"14\" y=\"" << (T + H - B) / 2 << "\" transform=\"rotate(-90 14 " << (T + H - B) / 2
     << ")\" text-anchor=\"middle\">mean / prediction</text>\n";
  int k = 0;
  for (const auto& [g, rows] : series) {
    const char* col = colors[k % 6];
    os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& r : rows) os << X(r.s) << ',' << Y(r.ratio()) << ' ';
    os << "\"/>\n";
    os << "<text x=\"" << W - R - 50 << "\" y=\"" << T + 14 * (k + 1) << "\" fill=\"" << col << "\">g = " << g << "</text>\n";
    ++k;
  }
  os << "</svg>\n";
  return os.str();
}

int cmd_scan(Context& cx, const MomentArgs& a) {
  const FieldCtx ctx = field_from_q(a.q);
  cx.q = a.q;
  const MomentOptions o = moment_options(cx, a);
  const std::vector<double> grid = parse_grid(a.grid);
  std::map<int, std::vector<MomentReport>> series;
  std::ostringstream os;
  os << kMomentCsvHeader << '\n';
  for (int g : a.g) {
    series[g] = scan_s(ctx, g, grid, o);
    for (const auto& r : series[g]) write_moment_csv_row(os, r);
  }
  std::map<std::string, std::string> extra;
  if (!a.svg.empty()) extra[a.svg] = render_svg(series);
  cx.emit(os.str(), extra);
  return kOk;
}

// ---------------------------------------------------------------- principal-dual

struct SplitArgs {
  MomentArgs m;
  int A = -1;
};

int cmd_split(Context& cx, const SplitArgs& a) {
  const FieldCtx ctx = field_from_q(a.m.q);
  cx.q = a.m.q;
  const MomentOptions o = moment_options(cx, a.m);
  const SplitReport r = principal_dual_split(ctx, a.m.g.front(), a.m.s, a.A, o);
  Json j;
  j["q"] = a.m.q;
  j["g"] = a.m.g.front();
  j["s"] = a.m.s;
  j["A"] = r.A;
  j["n"] = r.n;
  j["principal"] = complex_json(r.principal);
  j["dual"] = complex_json(r.dual);
  j["sum"] = complex_json(r.principal + r.dual);
  j["direct"] = complex_json(r.direct);
  j["relative_error"] = r.relative_error();
  j["max_character_error"] = r.max_character_error;
  cx.emit(j.dump(2) + "\n");
  return r.relative_error() < 1e-9 ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- constants

struct ConstantsArgs {
  std::uint64_t q = 7;
  double tol = 1e-12;
  std::optional<double> s;
  int degree = 0;
};

int cmd_constants(Context& cx, const ConstantsArgs& a) {
  field_from_q(a.q);
  cx.q = a.q;
  const ConstantValue C = C_q(a.q, a.tol, a.degree), B = B_q(a.q, a.tol, a.degree);
  Json j;
  j["q"] = a.q;
  if (a.s) {
    const ConstantValue M = M_q(a.q, *a.s, a.tol, a.degree);
    j["s"] = *a.s;
    j["M_q"] = M.value;
  }
  j["C_q"] = C.value;
  j["B_q"] = B.value;
  j["truncation_degree"] = std::max(C.truncation_degree, B.truncation_degree);
  j["tail_bound"] = std::max(C.tail_bound, B.tail_bound);
  cx.emit(j.dump(2) + "\n");
  return kOk;
}

// ---------------------------------------------------------------- gauss-sum, dual-main-term

struct GaussArgs {
  std::uint64_t q = 7;
  std::string V = "1", F;
  int power = 1;
};

int cmd_gauss(Context& cx, const GaussArgs& a) {
  const FieldCtx ctx = field_from_q(a.q);
  cx.q = a.q;
  const Poly V = parse_poly(ctx, a.V), F = parse_poly(ctx, a.F);
  const GaussValue G = gauss_sum(ctx, V, F, a.power);
  Json j;
  j["q"] = a.q;
  j["V"] = format_poly(ctx, V);
  j["F"] = format_poly(ctx, F);
  j["power"] = a.power;
  j["G"] = complex_json(G.value);
  j["abs"] = std::abs(G.value);
  j["normalized_abs"] = G.normalized_abs(ctx.q());
  cx.emit(j.dump(2) + "\n");
  return kOk;
}

struct DualArgs {
  std::uint64_t q = 7;
  std::string f = "1";
  std::vector<int> d{3, 4, 5};
};

int cmd_dual(Context& cx, const DualArgs& a) {
  const FieldCtx ctx = field_from_q(a.q);
  cx.q = a.q;
  const Poly f = parse_poly(ctx, a.f);
  std::ostringstream os;
  os << kDualMainCsvHeader << '\n';
  for (int d : a.d) write_dual_main_csv_row(os, ctx, dual_main_term_compare(ctx, f, d, cx.threads));
  cx.emit(os.str());
  return kOk;
}

// ---------------------------------------------------------------- rmt-integral, de-check

struct RmtArgs {
  int N = 3;
  std::string mode = "exact";
  std::uint64_t samples = 200000;
  std::uint64_t seed = 1;
  std::string lambda = "1", mu = "1";
};

Json mc_json(const McEstimate& e) {
  return {{"estimate", complex_json(e.estimate)}, {"sigma", e.sigma},     {"target", e.target},
          {"samples", e.samples},                 {"z_score", e.z_score()}};
}

int cmd_rmt(Context& cx, const RmtArgs& a) {
  Json j;
  j["N"] = a.N;
  j["mode"] = a.mode;
  if (a.mode == "exact") {
    const auto r = weighted_integral_exact(a.N);
    j["exact"] = r.closed_form;
    j["tuple_sum"] = r.tuple_sum.str();
    j["agree"] = r.agree();
    cx.emit(j.dump(2) + "\n");
    return r.agree() ? kOk : kCheckFailed;
  }
  cx.seeds.push_back(a.seed);
  j["seed"] = a.seed;
  const McEstimate e = weighted_integral_mc(a.N, a.samples, a.seed, cx.threads);
  j.update(mc_json(e));
  cx.emit(j.dump(2) + "\n");
  return e.z_score() <= 4.0 ? kOk : kCheckFailed;
}

int cmd_de(Context& cx, const RmtArgs& a) {
  const Partition l = parse_partition(a.lambda), m = parse_partition(a.mu);
  cx.seeds.push_back(a.seed);
  const McEstimate e = diaconis_evans_check(a.N, l, m, a.samples, a.seed, cx.threads);
  Json j;
  j["N"] = a.N;
  j["lambda"] = l.str();
  j["mu"] = m.str();
  j["seed"] = a.seed;
  j.update(mc_json(e));
  cx.emit(j.dump(2) + "\n");
  return e.z_score() <= 4.0 ? kOk : kCheckFailed;
}

int run(std::vector<std::string> args);

// ---------------------------------------------------------------- replay

int cmd_replay(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw UsageError("cannot read " + manifest_path);
  const Json m = Json::parse(in);
  std::vector<std::string> argv = m.at("argv").get<std::vector<std::string>>();
  std::map<std::string, std::string> renamed;
  for (const auto& o : m.at("outputs")) renamed[o.at("path").get<std::string>()] = "";
  for (std::size_t i = 1; i < argv.size(); ++i) {
    if (renamed.count(argv[i])) {
      renamed[argv[i]] = argv[i] + ".replay";
      argv[i] += ".replay";
    }
  }
  const int rc = run(argv);
  if (rc != kOk && rc != kCheckFailed) return rc;
  bool same = true;
  for (const auto& o : m.at("outputs")) {
    const std::string path = renamed.at(o.at("path").get<std::string>());
    std::ifstream f(path, std::ios::binary);
    const std::string body((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    const bool ok = digest_hex(strip_timing(body)) == o.at("content_digest").get<std::string>();
    std::cerr << (ok ? "identical: " : "DIFFERS: ") << o.at("path").get<std::string>() << '\n';
    same = same && ok;
  }
  return same ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- dispatch

int run(std::vector<std::string> args) {
  CLI::App app{"Cubic Dirichlet L-functions over F_q[T]: coefficients, identities, moments and random-matrix checks.\n"
               "Exit codes: 0 ok, 1 check failure, 2 usage, 3 domain error.\n"
               "Moment CSV columns: " + std::string(kMomentCsvHeader) + "\n"
               "Dual main term CSV columns: " + std::string(kDualMainCsvHeader) + "\n"
               "verify CSV columns: check,passed,total,max_deviation",
               "cubic"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);
  Context cx;
  cx.argv = args;
  cx.threads = default_threads();
  app.add_option("--threads", cx.threads, "worker threads (default: CUBIC_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  auto out_opt = [&](CLI::App* sub) {
    sub->add_option("--out", cx.out_path, "output file; a <out>.manifest.json is written next to it");
  };
  std::function<int()> action;

  LfunArgs lf;
  auto* lfun = app.add_subcommand("lfun", "coefficients, root number and values of L(s, chi_F^power)");
  lfun->add_option("--q", lf.q)->required();
  lfun->add_option("--F", lf.F, "square-free monic modulus, e.g. \"T^4+3*T+5\"")->required();
  lfun->add_option("--power", lf.power)->check(CLI::IsMember({1, 2}));
  lfun->add_option("--s", lf.s, "evaluation points (repeatable)");
  lfun->add_option("--emit", lf.emit)->check(CLI::IsMember({"json", "csv"}));
  out_opt(lfun);
  lfun->callback([&] { action = [&] { return cmd_lfun(cx, lf); }; });

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "functional equation, AFE, RH and root-number checks");
  verify->add_option("--q", va.q)->required();
  verify->add_option("--deg", va.deg, "conductor degree")->required();
  auto* all = verify->add_flag("--all", va.all, "every square-free modulus of the degree");
  verify->add_option("--sample", va.sample, "number of seeded moduli")->excludes(all);
  verify->add_option("--seed", va.seed);
  verify->add_option("--checks", va.checks, "comma list of fe,afe,rh,omega");
  out_opt(verify);
  verify->callback([&] { action = [&] { return cmd_verify(cx, va); }; });

  auto moment_flags = [&](CLI::App* sub, MomentArgs& m, bool many_g) {
    sub->add_option("--q", m.q)->required();
    if (many_g) sub->add_option("--g", m.g, "family index (repeatable)")->required();
    else sub->add_option("--g", m.g, "family index")->required()->expected(1);
    sub->add_option("--mode", m.mode)->check(CLI::IsMember({"exhaustive", "sample"}));
    sub->add_option("--n", m.n, "sample size");
    sub->add_option("--seed", m.seed);
    sub->add_flag("--allow-large", m.allow_large, "lift the exhaustive cost cutoff");
    out_opt(sub);
  };

  MomentArgs ma;
  auto* mom = app.add_subcommand("moment", "first moment of L(s, chi) over h(3g)");
  moment_flags(mom, ma, true);
  mom->add_option("--s", ma.s)->required();
  mom->add_option("--emit", ma.emit)->check(CLI::IsMember({"json", "csv"}));
  mom->callback([&] { action = [&] { return cmd_moment(cx, ma); }; });

  MomentArgs sa;
  auto* scan = app.add_subcommand("scan-s", "moment over a grid of s, one pass per character");
  moment_flags(scan, sa, true);
  scan->add_option("--s-grid", sa.grid, "lo:hi:step or a comma list")->required();
  scan->add_option("--svg", sa.svg, "write a ratio-vs-s chart");
  scan->callback([&] { action = [&] { return cmd_scan(cx, sa); }; });

  SplitArgs pa;
  auto* split = app.add_subcommand("principal-dual", "principal and dual parts of the family sum");
  moment_flags(split, pa.m, false);
  split->add_option("--s", pa.m.s)->required();
  split->add_option("--A", pa.A, "split index, default floor(3g/5)");
  split->callback([&] { action = [&] { return cmd_split(cx, pa); }; });

  ConstantsArgs ca;
  auto* cons = app.add_subcommand("constants", "C_q, B_q and optionally M_q(s)");
  cons->add_option("--q", ca.q)->required();
  cons->add_option("--tol", ca.tol);
  cons->add_option("--s", ca.s);
  cons->add_option("--degree", ca.degree, "force the truncation degree");
  out_opt(cons);
  cons->callback([&] { action = [&] { return cmd_constants(cx, ca); }; });

  GaussArgs ga;
  auto* gauss = app.add_subcommand("gauss-sum", "G(V, F) by direct summation");
  gauss->add_option("--q", ga.q)->required();
  gauss->add_option("--V", ga.V);
  gauss->add_option("--F", ga.F)->required();
  gauss->add_option("--power", ga.power)->check(CLI::IsMember({1, 2}));
  out_opt(gauss);
  gauss->callback([&] { action = [&] { return cmd_gauss(cx, ga); }; });

  DualArgs da;
  auto* dual = app.add_subcommand("dual-main-term", "sum of G(f, F) over M_d against its main term");
  dual->add_option("--q", da.q)->required();
  dual->add_option("--f", da.f);
  dual->add_option("--d", da.d, "degrees (repeatable)");
  out_opt(dual);
  dual->callback([&] { action = [&] { return cmd_dual(cx, da); }; });

  RmtArgs ra;
  auto* rmt = app.add_subcommand("rmt-integral", "E[det(1-U) conj det(1 - wedge^3 U)] over U(N)");
  rmt->add_option("--N", ra.N)->required();
  rmt->add_option("--mode", ra.mode)->check(CLI::IsMember({"exact", "mc"}));
  rmt->add_option("--samples", ra.samples);
  rmt->add_option("--seed", ra.seed);
  out_opt(rmt);
  rmt->callback([&] { action = [&] { return cmd_rmt(cx, ra); }; });

  RmtArgs de;
  auto* dec = app.add_subcommand("de-check", "E[P_lambda(U) conj P_mu(U)] against delta z_lambda");
  dec->add_option("--N", de.N)->required();
  dec->add_option("--lambda", de.lambda, "\"2,1,1\" or \"1^2 2^1\"");
  dec->add_option("--mu", de.mu);
  dec->add_option("--samples", de.samples);
  dec->add_option("--seed", de.seed);
  out_opt(dec);
  dec->callback([&] { action = [&] { return cmd_de(cx, de); }; });

  std::string manifest;
  auto* rep = app.add_subcommand("replay", "re-run a manifest and compare output digests");
  rep->add_option("manifest", manifest)->required();
  rep->callback([&] { action = [&] { return cmd_replay(manifest); }; });

  std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  cx.command = app.get_subcommands().front()->get_name();
  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == Errc::Parse ? kUsage : kDomain;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(std::vector<std::string>(argv, argv + argc)); }
