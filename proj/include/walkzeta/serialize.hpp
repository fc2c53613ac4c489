#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "walkzeta/catalog.hpp"
#include "walkzeta/walk.hpp"
#include "walkzeta/zeta.hpp"

namespace walkzeta {

using json = nlohmann::json;

/// 17-significant-digit decimal form; round-trips IEEE doubles exactly and
/// never depends on the locale.
std::string format_double(double v);
std::string format_complex(cd z);  // "re:im" pair used in CLI arguments

json complex_to_json(cd z);  // [re, im]
cd complex_from_json(const json& j);

/// Parses "0.25", "1e-3+0.5i", "-0.3i", "i", "2-i".
cd parse_complex(const std::string& s);

json coin_to_json(const Coin& coin);
Coin coin_from_json(const json& j);

std::string coin_to_csv(const Coin& coin);

json series_to_json(const SeriesTable& t);
std::string series_to_csv(const SeriesTable& t);  // header: r,re,im,method
SeriesTable series_from_csv(const std::string& text);
/// One CSV may hold several tables back to back (r restarts at 1).
std::vector<SeriesTable> series_tables_from_csv(const std::string& text);

json measures_to_json(const TorusConfig& config, const std::vector<std::vector<double>>& mu);
/// Site coordinate columns first, then mu_0..mu_n.
std::string measures_to_csv(const TorusConfig& config, const std::vector<std::vector<double>>& mu);

json walkstate_to_json(const WalkState& s);
std::string walkstate_to_csv(const WalkState& s);

json zeta_to_json(const std::vector<ZetaEvaluation>& evals);
json zeta_limit_to_json(const std::vector<ZetaLimit>& limits);
json factorization_to_json(const FactorizationReport& r);
json catalog_report_to_json(const std::vector<CatalogVerifyReport>& reports);
json consistency_to_json(const SeriesConsistencyReport& r);

}  // namespace walkzeta
