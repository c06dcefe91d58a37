#include "ncsched/harness/report.hpp"

#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "ncsched/error.hpp"

namespace ncsched::harness {

namespace {

const std::vector<std::string> kMeasures = {"eta", "lambda", "distortion", "l_eps"};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void exact_columns(std::ostringstream& os, const std::optional<Rational>& v, int precision) {
  if (!v) {
    os << ",,,";
    return;
  }
  os << ',' << v->get_num().get_str() << ',' << v->get_den().get_str() << ',' << to_decimal(*v, precision);
}

std::string extended(const std::optional<ExtendedRational>& v) { return v ? to_string(*v) : ""; }

std::string wall(double ms) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

Json opt_json(const std::optional<Rational>& v) { return v ? Json(to_string(*v)) : Json(nullptr); }

std::optional<Rational> opt_from(const Json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  return rational_from_json(doc.at(key));
}

}  // namespace

std::string rows_to_csv(const std::vector<ResultRow>& rows, const CsvOptions& options) {
  std::ostringstream os;
  os << "experiment,instance_index,instance,noise_index,noise,seed,policy,model,machines,n,topology,width,"
        "alg_num,alg_den,alg,opt_num,opt_den,opt,opt_kind,lb_num,lb_den,lb,ratio_num,ratio_den,ratio,rho";
  for (const std::string& m : kMeasures) os << ',' << m;
  os << ",status,message";
  if (options.wall_time) os << ",wall_ms";
  os << '\n';
  for (const ResultRow& r : rows) {
    os << csv_field(r.experiment) << ',' << r.instance_index << ',' << csv_field(r.instance_label) << ','
       << r.noise_index << ',' << csv_field(r.noise) << ',' << r.seed << ',' << csv_field(r.policy) << ','
       << r.model << ',' << r.machines << ',' << r.n << ',' << r.topology << ',' << r.width;
    exact_columns(os, r.alg, options.precision);
    exact_columns(os, r.opt, options.precision);
    os << ',' << r.opt_kind;
    exact_columns(os, r.lower_bound, options.precision);
    exact_columns(os, r.ratio, options.precision);
    os << ',' << extended(r.rho);
    for (const std::string& m : kMeasures) {
      auto it = r.errors.find(m);
      os << ',' << (it == r.errors.end() ? "" : to_string(it->second));
    }
    os << ',' << r.status << ',' << csv_field(r.message);
    if (options.wall_time) os << ',' << wall(r.wall_ms);
    os << '\n';
  }
  return os.str();
}

std::string rows_to_summary(const std::vector<ResultRow>& rows, int precision) {
  struct Group {
    std::size_t count = 0, errors = 0, with_ratio = 0;
    std::optional<Rational> max_ratio;
    Rational sum_ratio{0};
    std::map<std::string, ExtendedRational> max_error;
  };
  using Key = std::tuple<std::string, std::string, std::size_t, std::string>;
  std::map<Key, Group> groups;
  for (const ResultRow& r : rows) {
    Group& g = groups[{r.policy, r.model, r.noise_index, r.noise}];
    ++g.count;
    if (r.status != "ok") ++g.errors;
    if (r.ratio) {
      ++g.with_ratio;
      g.sum_ratio += *r.ratio;
      if (!g.max_ratio || *r.ratio > *g.max_ratio) g.max_ratio = *r.ratio;
    }
    for (const auto& [m, v] : r.errors) {
      auto it = g.max_error.find(m);
      if (it == g.max_error.end() || it->second < v) g.max_error[m] = v;
    }
  }
  std::ostringstream os;
  os << "policy,model,noise,rows,errors,max_ratio,mean_ratio";
  for (const std::string& m : kMeasures) os << ",max_" << m;
  os << '\n';
  for (const auto& [key, g] : groups) {
    const auto& [policy, model, index, noise] = key;
    os << csv_field(policy) << ',' << model << ',' << csv_field(noise) << ',' << g.count << ',' << g.errors << ',';
    if (g.max_ratio) os << to_decimal(*g.max_ratio, precision);
    os << ',';
    if (g.with_ratio) os << to_decimal(Rational(g.sum_ratio / Rational(static_cast<unsigned long>(g.with_ratio))), precision);
    for (const std::string& m : kMeasures) {
      os << ',';
      auto it = g.max_error.find(m);
      if (it == g.max_error.end()) continue;
      os << (it->second.is_infinite() ? std::string("inf") : to_decimal(it->second.value(), precision));
    }
    os << '\n';
  }
  return os.str();
}

Json rows_to_json(const std::vector<ResultRow>& rows) {
  Json out = Json::array();
  for (const ResultRow& r : rows) {
    Json errors = Json::object();
    for (const auto& [m, v] : r.errors) errors[m] = to_string(v);
    out.push_back({{"experiment", r.experiment},
                   {"instance_index", r.instance_index},
                   {"instance", r.instance_label},
                   {"noise_index", r.noise_index},
                   {"noise", r.noise},
                   {"seed", r.seed},
                   {"policy", r.policy},
                   {"model", r.model},
                   {"machines", r.machines},
                   {"n", r.n},
                   {"topology", r.topology},
                   {"width", r.width},
                   {"alg", opt_json(r.alg)},
                   {"opt", opt_json(r.opt)},
                   {"opt_kind", r.opt_kind},
                   {"lower_bound", opt_json(r.lower_bound)},
                   {"ratio", opt_json(r.ratio)},
                   {"rho", r.rho ? Json(to_string(*r.rho)) : Json(nullptr)},
                   {"errors", errors},
                   {"status", r.status},
                   {"message", r.message},
                   {"wall_ms", r.wall_ms}});
  }
  return out;
}

std::vector<ResultRow> rows_from_json(const Json& doc) {
  if (!doc.is_array()) throw Error(Errc::Parse, "rows must be an array");
  std::vector<ResultRow> rows;
  try {
    for (const Json& j : doc) {
      ResultRow r;
      r.experiment = j.at("experiment").get<std::string>();
      r.instance_index = j.at("instance_index").get<std::size_t>();
      r.instance_label = j.at("instance").get<std::string>();
      r.noise_index = j.at("noise_index").get<std::size_t>();
      r.noise = j.at("noise").get<std::string>();
      r.seed = j.at("seed").get<std::uint64_t>();
      r.policy = j.at("policy").get<std::string>();
      r.model = j.at("model").get<std::string>();
      r.machines = j.at("machines").get<std::size_t>();
      r.n = j.at("n").get<std::size_t>();
      r.topology = j.at("topology").get<std::string>();
      r.width = j.at("width").get<std::size_t>();
      r.alg = opt_from(j, "alg");
      r.opt = opt_from(j, "opt");
      r.opt_kind = j.at("opt_kind").get<std::string>();
      r.lower_bound = opt_from(j, "lower_bound");
      r.ratio = opt_from(j, "ratio");
      if (j.contains("rho") && !j.at("rho").is_null()) r.rho = parse_extended(j.at("rho").get<std::string>());
      for (const auto& [m, v] : j.at("errors").items()) r.errors[m] = parse_extended(v.get<std::string>());
      r.status = j.at("status").get<std::string>();
      r.message = j.at("message").get<std::string>();
      r.wall_ms = j.value("wall_ms", 0.0);
      rows.push_back(std::move(r));
    }
  } catch (const Json::exception& e) {
    throw Error(Errc::Parse, std::string("rows: ") + e.what());
  }
  return rows;
}

}  // namespace ncsched::harness
