#include "cubic/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace cubic {

Json eisenstein_json(const Eisenstein& z) { return Json::array({z.x, z.y}); }

Json complex_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json ldata_json(const FieldCtx& ctx, const LData& L) {
  Json j;
  j["q"] = L.q;
  j["F"] = format_poly(ctx, L.chi.modulus());
  j["power"] = L.chi.power();
  j["genus"] = L.genus;
  j["delta"] = L.delta;
  Json a = Json::array(), b = Json::array();
  for (const auto& x : L.a) a.push_back(eisenstein_json(x));
  for (const auto& x : L.b) b.push_back(eisenstein_json(x));
  j["a"] = a;
  j["b"] = b;
  j["omega"] = complex_json(L.omega);
  return j;
}

std::string fmt_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

const char* const kMomentCsvHeader = "q,g,s,mode,n,seed,mean_re,mean_im,std_err,prediction,ratio,envelope,elapsed_ms";

void write_moment_csv_row(std::ostream& os, const MomentReport& r) {
  os << r.q << ',' << r.g << ',' << fmt_double(r.s) << ',' << mode_name(r.mode) << ',' << r.sample_size << ','
     << r.seed << ',' << fmt_double(r.mean.real()) << ',' << fmt_double(r.mean.imag()) << ','
     << fmt_double(r.std_error) << ',' << fmt_double(r.prediction) << ',' << fmt_double(r.ratio()) << ','
     << fmt_double(r.envelope) << ',' << fmt_double(r.elapsed_ms) << '\n';
}

Json moment_json(const MomentReport& r) {
  Json j;
  j["q"] = r.q;
  j["g"] = r.g;
  j["s"] = r.s;
  j["mode"] = mode_name(r.mode);
  j["n"] = r.sample_size;
  j["seed"] = r.seed;
  j["at_transition"] = r.at_transition;
  j["mean_re"] = r.mean.real();
  j["mean_im"] = r.mean.imag();
  j["mean_doubled"] = r.mean_doubled;
  j["std_err"] = r.std_error;
  j["prediction"] = r.prediction;
  j["ratio"] = r.ratio();
  j["envelope"] = r.envelope;
  j["elapsed_ms"] = r.elapsed_ms;
  Json sums = Json::array();
  for (const auto& e : r.coeff_sums) sums.push_back(eisenstein_json(e));
  j["coeff_sums"] = sums;
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(r.sample_digest));
  j["sample_digest"] = hex;
  return j;
}

std::vector<std::vector<std::string>> read_csv(std::istream& is) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

const char* const kDualMainCsvHeader = "d,f,exact_re,exact_im,main_re,main_im,residual";

void write_dual_main_csv_row(std::ostream& os, const FieldCtx& ctx, const DualMainTerm& r) {
  os << r.d << ',' << format_poly(ctx, r.f) << ',' << fmt_double(r.exact.real()) << ',' << fmt_double(r.exact.imag())
     << ',' << fmt_double(r.main.real()) << ',' << fmt_double(r.main.imag()) << ',' << fmt_double(r.residual) << '\n';
}

std::string digest_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

}  // namespace cubic
