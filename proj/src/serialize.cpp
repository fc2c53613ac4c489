#include "walkzeta/serialize.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace walkzeta {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  if (ec != std::errc{}) throw Error("format_double failed");
  return std::string(buf, ptr);
}

std::string format_complex(cd z) { return format_double(z.real()) + ":" + format_double(z.imag()); }

json complex_to_json(cd z) { return json::array({z.real(), z.imag()}); }

cd complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("complex value must be [re, im]");
  return cd(j[0].get<double>(), j[1].get<double>());
}

namespace {

double parse_double_strict(const std::string& s) {
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (begin != end && *begin == '+') ++begin;  // from_chars rejects a leading '+'
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end || begin == end)
    throw ParseError("bad number: '" + s + "'");
  return v;
}

}  // namespace

cd parse_complex(const std::string& raw) {
  std::string s;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw ParseError("empty complex literal");
  // split at the last +/- that is not an exponent sign and not leading
  size_t split = std::string::npos;
  for (size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto parse_part = [](std::string part, bool* imag) {
    *imag = false;
    if (!part.empty() && (part.back() == 'i' || part.back() == 'j')) {
      *imag = true;
      part.pop_back();
      if (part.empty() || part == "+") part = "1";
      else if (part == "-") part = "-1";
    }
    return parse_double_strict(part);
  };
  bool imag_a = false, imag_b = false;
  if (split == std::string::npos) {
    const double v = parse_part(s, &imag_a);
    return imag_a ? cd(0.0, v) : cd(v, 0.0);
  }
  const double a = parse_part(s.substr(0, split), &imag_a);
  const double b = parse_part(s.substr(split), &imag_b);
  if (imag_a == imag_b) throw ParseError("bad complex literal: '" + raw + "'");
  return imag_a ? cd(b, a) : cd(a, b);
}

json coin_to_json(const Coin& coin) {
  json entries = json::array();
  for (const cd& z : coin.matrix.entries()) entries.push_back(complex_to_json(z));
  return json{{"model", to_string(coin.model)},
              {"states", coin.states},
              {"shift_kind", to_string(coin.shift_kind)},
              {"entries", entries}};
}

Coin coin_from_json(const json& j) {
  const int states = j.at("states").get<int>();
  const auto& entries = j.at("entries");
  if (!entries.is_array() || static_cast<int>(entries.size()) != states * states)
    throw ParseError("coin entries must hold states^2 [re, im] pairs");
  std::vector<cd> e;
  e.reserve(entries.size());
  for (const auto& item : entries) e.push_back(complex_from_json(item));
  return make_coin(CMatrix(states, states, std::move(e)),
                   coin_model_from_string(j.at("model").get<std::string>()),
                   shift_kind_from_string(j.at("shift_kind").get<std::string>()),
                   states == 3);
}

std::string coin_to_csv(const Coin& coin) {
  std::ostringstream os;
  os << "row,col,re,im\n";
  for (int r = 0; r < coin.states; ++r)
    for (int c = 0; c < coin.states; ++c) {
      const cd z = coin.matrix.at(r, c);
      os << r << ',' << c << ',' << format_double(z.real()) << ',' << format_double(z.imag())
         << '\n';
    }
  return os.str();
}

json series_to_json(const SeriesTable& t) {
  json values = json::array();
  for (const cd& v : t.values) values.push_back(complex_to_json(v));
  return json{{"method", to_string(t.method)}, {"rmax", t.rmax()}, {"values", values}};
}

std::string series_to_csv(const SeriesTable& t) {
  std::ostringstream os;
  os << "r,re,im,method\n";
  const std::string m = to_string(t.method);
  for (int r = 1; r <= t.rmax(); ++r) {
    const cd v = t.at(r);
    os << r << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << ',' << m
       << '\n';
  }
  return os.str();
}

std::vector<SeriesTable> series_tables_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "r,re,im,method")
    throw ParseError("series CSV must start with 'r,re,im,method'");
  std::vector<SeriesTable> tables;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string r_s, re_s, im_s, m_s;
    if (!std::getline(ls, r_s, ',') || !std::getline(ls, re_s, ',') ||
        !std::getline(ls, im_s, ',') || !std::getline(ls, m_s))
      throw ParseError("bad series CSV row: '" + line + "'");
    const int r = static_cast<int>(parse_double_strict(r_s));
    if (r == 1) tables.push_back(SeriesTable{SeriesMethod::fourier_trace, {}});
    if (tables.empty() || r != static_cast<int>(tables.back().values.size()) + 1)
      throw ParseError("series CSV rows must be consecutive in r");
    tables.back().values.emplace_back(parse_double_strict(re_s), parse_double_strict(im_s));
    bool method_set = false;
    for (SeriesMethod m : {SeriesMethod::fourier_trace, SeriesMethod::direct_trace,
                           SeriesMethod::dp_weight, SeriesMethod::closed_form,
                           SeriesMethod::quadrature})
      if (to_string(m) == m_s) {
        tables.back().method = m;
        method_set = true;
      }
    if (!method_set) throw ParseError("unknown series method: '" + m_s + "'");
  }
  return tables;
}

SeriesTable series_from_csv(const std::string& text) {
  const auto tables = series_tables_from_csv(text);
  if (tables.size() != 1) throw ParseError("expected exactly one series table in the CSV");
  return tables[0];
}

namespace {

std::vector<int> site_coords(const TorusConfig& config, long idx) {
  std::vector<int> x(config.dim);
  for (int j = config.dim - 1; j >= 0; --j) {
    x[j] = static_cast<int>(idx % config.n_sites);
    idx /= config.n_sites;
  }
  return x;
}

}  // namespace

json measures_to_json(const TorusConfig& config, const std::vector<std::vector<double>>& mu) {
  json by_time = json::array();
  for (const auto& m : mu) by_time.push_back(m);
  return json{{"d", config.dim}, {"N", config.n_sites}, {"measures", by_time}};
}

std::string measures_to_csv(const TorusConfig& config, const std::vector<std::vector<double>>& mu) {
  std::ostringstream os;
  for (int j = 1; j <= config.dim; ++j) os << 'x' << j << ',';
  for (size_t t = 0; t < mu.size(); ++t) os << "mu_" << t << (t + 1 < mu.size() ? "," : "");
  os << '\n';
  const long total = config.total_sites();
  for (long idx = 0; idx < total; ++idx) {
    for (int c : site_coords(config, idx)) os << c << ',';
    for (size_t t = 0; t < mu.size(); ++t)
      os << format_double(mu[t][idx]) << (t + 1 < mu.size() ? "," : "");
    os << '\n';
  }
  return os.str();
}

json walkstate_to_json(const WalkState& s) {
  json amps = json::array();
  for (const cd& z : s.amp) amps.push_back(complex_to_json(z));
  return json{{"d", s.config.dim}, {"N", s.config.n_sites}, {"states", s.states},
              {"amplitudes", amps}};
}

std::string walkstate_to_csv(const WalkState& s) {
  std::ostringstream os;
  for (int j = 1; j <= s.config.dim; ++j) os << 'x' << j << ',';
  for (int c = 1; c <= s.states; ++c) os << "re_" << c << ",im_" << c << (c < s.states ? "," : "");
  os << '\n';
  const long total = s.config.total_sites();
  for (long idx = 0; idx < total; ++idx) {
    for (int c : site_coords(s.config, idx)) os << c << ',';
    for (int c = 0; c < s.states; ++c) {
      const cd z = s.amp[idx * s.states + c];
      os << format_double(z.real()) << ',' << format_double(z.imag()) << (c + 1 < s.states ? "," : "");
    }
    os << '\n';
  }
  return os.str();
}

json zeta_to_json(const std::vector<ZetaEvaluation>& evals) {
  json arr = json::array();
  for (const ZetaEvaluation& e : evals)
    arr.push_back(json{{"u", complex_to_json(e.u)},
                       {"zeta_inv", complex_to_json(e.zeta_inv)},
                       {"log_zeta_inv", complex_to_json(e.log_zeta_inv)},
                       {"imag_residual", e.imag_residual},
                       {"grid", e.grid},
                       {"branch_risk", e.branch_risk}});
  return json{{"evaluations", arr}};
}

json zeta_limit_to_json(const std::vector<ZetaLimit>& limits) {
  json arr = json::array();
  for (const ZetaLimit& l : limits)
    arr.push_back(json{{"u", complex_to_json(l.eval.u)},
                       {"zeta_inv", complex_to_json(l.eval.zeta_inv)},
                       {"log_zeta_inv", complex_to_json(l.eval.log_zeta_inv)},
                       {"imag_residual", l.eval.imag_residual},
                       {"grid", l.eval.grid},
                       {"branch_risk", l.eval.branch_risk},
                       {"refined", complex_to_json(l.value_refined)},
                       {"convergence_diff", l.diff},
                       {"convergence_tol", l.tol}});
  return json{{"evaluations", arr}};
}

json factorization_to_json(const FactorizationReport& r) {
  json samples = json::array();
  for (const FactorizationSample& s : r.samples)
    samples.push_back(json{{"u", complex_to_json(s.u)},
                           {"lhs", complex_to_json(s.lhs)},
                           {"rhs", complex_to_json(s.rhs)},
                           {"rel_err", s.rel_err}});
  return json{{"max_rel_err", r.max_rel_err}, {"samples", samples}};
}

json catalog_report_to_json(const std::vector<CatalogVerifyReport>& reports) {
  json arr = json::array();
  for (const CatalogVerifyReport& r : reports) {
    json variants = json::array();
    for (const auto& [label, err] : r.variant_errs)
      variants.push_back(json{{"label", label}, {"max_abs_err", err}});
    arr.push_back(json{{"id", r.id},
                       {"max_abs_err", r.max_abs_err},
                       {"variants", variants},
                       {"matched", r.matched},
                       {"pass", r.pass},
                       {"note", r.note}});
  }
  return json{{"entries", arr}};
}

json consistency_to_json(const SeriesConsistencyReport& r) {
  json samples = json::array();
  for (const SeriesConsistencySample& s : r.samples)
    samples.push_back(json{{"u", complex_to_json(s.u)},
                           {"residual", s.residual},
                           {"tolerance", s.tolerance},
                           {"pass", s.pass}});
  return json{{"spectral_bound", r.spectral_bound}, {"all_pass", r.all_pass},
              {"samples", samples}};
}

}  // namespace walkzeta
