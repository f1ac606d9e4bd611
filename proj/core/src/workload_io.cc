#include "partload/workload_io.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "partload/errors.h"

namespace partload {

using nlohmann::json;

namespace {

json parse_json(std::string_view document) {
  try {
    return json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kInvalidInput, std::string("malformed workload document: ") + e.what());
  }
}

template <typename T>
T get_field(const json& obj, const char* key, const char* where) {
  if (!obj.is_object() || !obj.contains(key)) {
    fail(ErrorKind::kInvalidInput, std::string("missing field '") + key + "' in " + where);
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    fail(ErrorKind::kInvalidInput, std::string("field '") + key + "' in " + where +
                                       " has the wrong type");
  }
}

CostParams params_from_json(const json& p) {
  CostParams params;
  params.row_count = get_field<std::uint64_t>(p, "row_count", "params");
  params.raw_size = get_field<double>(p, "raw_size_bytes", "params");
  params.bandwidth = get_field<double>(p, "bandwidth_bytes_per_sec", "params");
  params.tokenization_mode =
      tokenization_mode_from_string(get_field<std::string>(p, "tokenization_mode", "params"));
  const json& attrs = p.contains("attributes") ? p.at("attributes") : json();
  if (!attrs.is_array()) fail(ErrorKind::kInvalidInput, "params.attributes must be an array");
  int index = 0;
  for (const json& a : attrs) {
    Attribute attr;
    attr.index = index++;
    attr.name = get_field<std::string>(a, "name", "attribute");
    attr.spf = get_field<double>(a, "spf_bytes", "attribute");
    attr.t_tok = get_field<double>(a, "t_tok_sec", "attribute");
    attr.t_parse = get_field<double>(a, "t_parse_sec", "attribute");
    params.attributes.push_back(std::move(attr));
  }
  validate(params);
  return params;
}

Workload queries_from_json(const json& doc, const CostParams& params) {
  Workload workload;
  if (!doc.contains("queries")) return workload;
  const json& qs = doc.at("queries");
  if (!qs.is_array()) fail(ErrorKind::kInvalidInput, "queries must be an array");
  for (const json& q : qs) {
    Query query;
    query.id = get_field<std::string>(q, "id", "query");
    query.weight = q.contains("weight") ? get_field<double>(q, "weight", "query") : 1.0;
    const json& names = q.contains("attrs") ? q.at("attrs") : json();
    if (!names.is_array()) fail(ErrorKind::kInvalidInput, "query " + query.id + ": attrs must be an array");
    for (const json& name : names) {
      if (!name.is_string()) fail(ErrorKind::kInvalidInput, "query " + query.id + ": attribute names must be strings");
      const int j = params.find(name.get<std::string>());
      if (j < 0) {
        fail(ErrorKind::kInvalidInput,
             "unknown attribute '" + name.get<std::string>() + "' in query " + query.id);
      }
      query.attrs.push_back(j);
    }
    workload.queries.push_back(std::move(query));
  }
  validate(workload, params);
  return workload;
}

}  // namespace

WorkloadDocument parse_workload(std::string_view document) {
  const json doc = parse_json(document);
  if (!doc.is_object() || !doc.contains("params")) {
    fail(ErrorKind::kInvalidInput, "workload document needs a 'params' object");
  }
  WorkloadDocument out;
  out.params = params_from_json(doc.at("params"));
  out.workload = queries_from_json(doc, out.params);
  return out;
}

Workload parse_queries(std::string_view document, const CostParams& params) {
  const json doc = parse_json(document);
  if (!doc.is_object()) fail(ErrorKind::kInvalidInput, "workload document must be an object");
  return queries_from_json(doc, params);
}

std::string serialize_workload(const CostParams& params, const Workload& workload) {
  json attrs = json::array();
  for (const Attribute& a : params.attributes) {
    attrs.push_back({{"name", a.name},
                     {"spf_bytes", a.spf},
                     {"t_tok_sec", a.t_tok},
                     {"t_parse_sec", a.t_parse}});
  }
  json queries = json::array();
  for (const Query& q : workload.queries) {
    json names = json::array();
    for (int j : q.attrs) names.push_back(params.attributes[static_cast<std::size_t>(j)].name);
    queries.push_back({{"id", q.id}, {"attrs", std::move(names)}, {"weight", q.weight}});
  }
  json doc = {
      {"params",
       {{"row_count", params.row_count},
        {"raw_size_bytes", params.raw_size},
        {"bandwidth_bytes_per_sec", params.bandwidth},
        {"tokenization_mode", std::string(to_string(params.tokenization_mode))},
        {"attributes", std::move(attrs)}}},
      {"queries", std::move(queries)}};
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::kIo, "cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) fail(ErrorKind::kIo, "write failed for " + path);
}

WorkloadDocument read_workload_file(const std::string& path) {
  return parse_workload(read_text_file(path));
}

}  // namespace partload
