#include "ncsched/core/json_io.hpp"

#include <fstream>
#include <sstream>

#include "ncsched/error.hpp"

namespace ncsched {

Json rational_to_json(const Rational& value) { return to_string(value); }

Rational rational_from_json(const Json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(mpz_class(std::to_string(value.get<long long>())));
  throw Error(Errc::Parse, "expected rational string or integer, got " + value.dump());
}

Json instance_to_json(const Instance& instance) {
  Json jobs = Json::array();
  for (const Job& j : instance.jobs()) {
    jobs.push_back({{"id", j.id}, {"p", rational_to_json(j.p)}, {"w", rational_to_json(j.w)}});
  }
  Json edges = Json::array();
  for (const Edge& e : instance.edges()) edges.push_back(Json::array({e.from, e.to}));
  return {{"version", 1}, {"jobs", jobs}, {"edges", edges}};
}

namespace {

void parse_raw(const Json& doc, std::vector<RawJob>& jobs, std::vector<RawEdge>& edges) {
  try {
    if (!doc.is_object()) throw Error(Errc::Parse, "instance document must be an object");
    if (doc.contains("version") && doc.at("version").get<int>() != 1) {
      throw Error(Errc::Parse, "unsupported instance version " + doc.at("version").dump());
    }
    for (const Json& j : doc.at("jobs")) {
      jobs.push_back({j.at("id").get<std::int64_t>(), rational_from_json(j.at("p")),
                      rational_from_json(j.at("w"))});
    }
    if (doc.contains("edges")) {
      for (const Json& e : doc.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw Error(Errc::Parse, "edge must be [from, to]");
        edges.push_back({e[0].get<std::int64_t>(), e[1].get<std::int64_t>()});
      }
    }
  } catch (const Json::exception& ex) {
    throw Error(Errc::Parse, std::string("instance schema: ") + ex.what());
  }
}

}  // namespace

Validation validate_json(const Json& doc) {
  std::vector<RawJob> jobs;
  std::vector<RawEdge> edges;
  parse_raw(doc, jobs, edges);
  return validate(jobs, edges);
}

Instance instance_from_json(const Json& doc) {
  std::vector<RawJob> jobs;
  std::vector<RawEdge> edges;
  parse_raw(doc, jobs, edges);
  return make_instance(jobs, edges);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& ex) {
    throw Error(Errc::Parse, path + ": " + ex.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::Io, "cannot write " + path);
  out << text;
}

}  // namespace ncsched
