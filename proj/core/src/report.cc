#include <cstdio>
#include <string>

#include "json.hpp"
#include "partload/cost.h"

namespace partload {

std::string report_to_json(const CostReport& report) {
  nlohmann::json queries = nlohmann::json::array();
  for (const QueryCost& q : report.per_query) {
    queries.push_back({{"id", q.query_id},
                       {"weight", q.weight},
                       {"seconds", q.seconds},
                       {"class", std::string(to_string(q.classification))},
                       {"terms",
                        {{"raw_read_sec", q.terms.raw_read},
                         {"tokenize_sec", q.terms.tokenize},
                         {"parse_sec", q.terms.parse},
                         {"loaded_read_sec", q.terms.loaded_read}}}});
  }
  nlohmann::json doc = {{"mode", std::string(to_string(report.mode))},
                        {"load_time_sec", report.load_time},
                        {"objective_sec", report.objective},
                        {"queries", std::move(queries)}};
  return doc.dump(2) + "\n";
}

std::string report_to_cumulative_csv(const CostReport& report) {
  std::string out = "query_index,cumulative_sec\n";
  char line[64];
  double cumulative = report.load_time;
  std::snprintf(line, sizeof(line), "0,%.9g\n", cumulative);
  out += line;
  for (std::size_t i = 0; i < report.per_query.size(); ++i) {
    cumulative += report.per_query[i].seconds;
    std::snprintf(line, sizeof(line), "%zu,%.9g\n", i + 1, cumulative);
    out += line;
  }
  return out;
}

}  // namespace partload
