#pragma once

// Prover reports and their JSON form.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ebhint/prove.hpp"
#include "ebhint/sequent.hpp"

namespace ebhint::cli {

using Json = nlohmann::ordered_json;

struct ObligationReport {
  std::string name;
  std::string kind;
  std::string status;
  std::vector<std::string> selectedLabels;
  std::optional<std::string> hintApplied;
  std::string traceSummary;
  std::int64_t durationMillis = 0;
  std::string reason;
  std::optional<std::map<std::string, std::int64_t>> counterexample;
  friend bool operator==(const ObligationReport&, const ObligationReport&) = default;
};

struct Summary {
  int total = 0;
  int proved = 0;
  int unproved = 0;
  int unsupported = 0;
  friend bool operator==(const Summary&, const Summary&) = default;
};

struct Report {
  std::string machine;
  std::string mode;
  std::vector<ObligationReport> obligations;
  Summary summary;
  friend bool operator==(const Report&, const Report&) = default;

  void tally() {
    summary = {};
    for (const auto& o : obligations) {
      ++summary.total;
      if (o.status == "proved") ++summary.proved;
      if (o.status == "unproved") ++summary.unproved;
      if (o.status == "unsupported") ++summary.unsupported;
    }
  }
};

inline std::string traceSummary(const std::vector<TraceStep>& trace) {
  std::string out;
  for (const auto& s : trace) {
    if (!out.empty()) out += "; ";
    out += s.tactic;
    if (!s.detail.empty()) out += "(" + s.detail + ")";
    out += " -> " + std::to_string(s.openGoals);
  }
  return out;
}

inline ObligationReport reportFor(const ProofObligation& po, const ProofResult& r, std::int64_t millis) {
  ObligationReport o;
  o.name = po.name;
  o.kind = kindName(po.kind);
  o.status = statusName(r.status);
  o.selectedLabels = po.sequent.selectedLabels();
  o.hintApplied = po.hintApplied;
  o.traceSummary = traceSummary(r.trace);
  o.durationMillis = millis;
  o.reason = r.reason;
  if (r.counterexample) {
    std::map<std::string, std::int64_t> cx;
    for (const auto& [s, v] : *r.counterexample) cx[s.str()] = v;
    o.counterexample = std::move(cx);
  }
  return o;
}

inline void to_json(Json& j, const ObligationReport& o) {
  j = Json::object();
  j["name"] = o.name;
  j["kind"] = o.kind;
  j["status"] = o.status;
  j["selectedLabels"] = o.selectedLabels;
  j["hintApplied"] = o.hintApplied ? Json(*o.hintApplied) : Json(nullptr);
  j["traceSummary"] = o.traceSummary;
  j["durationMillis"] = o.durationMillis;
  j["reason"] = o.reason;
  if (o.counterexample) {
    Json cx = Json::object();
    for (const auto& [k, v] : *o.counterexample) cx[k] = v;
    j["counterexample"] = cx;
  } else {
    j["counterexample"] = nullptr;
  }
}

inline void from_json(const Json& j, ObligationReport& o) {
  j.at("name").get_to(o.name);
  j.at("kind").get_to(o.kind);
  j.at("status").get_to(o.status);
  j.at("selectedLabels").get_to(o.selectedLabels);
  o.hintApplied.reset();
  if (!j.at("hintApplied").is_null()) o.hintApplied = j.at("hintApplied").get<std::string>();
  j.at("traceSummary").get_to(o.traceSummary);
  j.at("durationMillis").get_to(o.durationMillis);
  o.reason = j.value("reason", std::string{});
  o.counterexample.reset();
  if (j.contains("counterexample") && !j.at("counterexample").is_null()) {
    std::map<std::string, std::int64_t> cx;
    for (const auto& [k, v] : j.at("counterexample").items()) cx[k] = v.get<std::int64_t>();
    o.counterexample = std::move(cx);
  }
}

inline void to_json(Json& j, const Report& r) {
  j = Json::object();
  j["machine"] = r.machine;
  j["mode"] = r.mode;
  j["obligations"] = Json::array();
  for (const auto& o : r.obligations) j["obligations"].push_back(o);
  j["summary"] = {{"total", r.summary.total},
                  {"proved", r.summary.proved},
                  {"unproved", r.summary.unproved},
                  {"unsupported", r.summary.unsupported}};
}

inline void from_json(const Json& j, Report& r) {
  j.at("machine").get_to(r.machine);
  j.at("mode").get_to(r.mode);
  r.obligations = j.at("obligations").get<std::vector<ObligationReport>>();
  const Json& s = j.at("summary");
  s.at("total").get_to(r.summary.total);
  s.at("proved").get_to(r.summary.proved);
  s.at("unproved").get_to(r.summary.unproved);
  s.at("unsupported").get_to(r.summary.unsupported);
}

}  // namespace ebhint::cli
