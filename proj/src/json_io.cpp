#include "trn/json_io.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace trn {

using nlohmann::json;

namespace {

void require_fields(const json& obj, const char* where,
                    const std::set<std::string>& required,
                    const std::set<std::string>& optional = {}) {
  if (!obj.is_object())
    throw DocumentError(std::string(where) + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!required.count(key) && !optional.count(key))
      throw DocumentError(std::string("unknown field \"") + key + "\" in " + where);
  }
  for (const auto& key : required)
    if (!obj.contains(key))
      throw DocumentError(std::string(where) + " is missing \"" + key + "\"");
}

double bound_from(const json& v, const char* which, double inf_value) {
  if (v.is_null()) return inf_value;
  if (!v.is_number())
    throw DocumentError(std::string(which) + " bound must be a number or null");
  return v.get<double>();
}

json bound_to(double v) {
  if (std::isinf(v)) return nullptr;
  return v;
}

EventId event_ref(const json& v, const Stn& stn, const char* where) {
  if (!v.is_string())
    throw DocumentError(std::string(where) + " must name an event");
  const auto id = stn.find_event(v.get<std::string>());
  if (!id)
    throw DocumentError("unknown event \"" + v.get<std::string>() + "\" in " + where);
  return *id;
}

Stc stc_from(const json& c, const Stn& stn) {
  require_fields(c, "temporal constraint", {"from", "to", "lb", "ub"});
  Stc out;
  out.from = event_ref(c["from"], stn, "constraint");
  out.to = event_ref(c["to"], stn, "constraint");
  out.lower = bound_from(c["lb"], "lb", -kInf);
  out.upper = bound_from(c["ub"], "ub", kInf);
  if (out.lower > out.upper)
    throw DocumentError("constraint with lb > ub");
  return out;
}

json stc_to(const Stc& c, const Stn& stn) {
  return {{"from", stn.events[c.from]},
          {"to", stn.events[c.to]},
          {"lb", bound_to(c.lower)},
          {"ub", bound_to(c.upper)}};
}

}  // namespace

Trn trn_from_json(const json& doc) {
  require_fields(doc, "document", {"version", "events", "temporal", "resources"});
  if (!doc["version"].is_number_integer() || doc["version"].get<int>() != 1)
    throw DocumentError("unsupported document version");

  Stn stn;
  if (!doc["events"].is_array()) throw DocumentError("events must be an array");
  std::set<std::string> seen;
  for (const auto& name : doc["events"]) {
    if (!name.is_string()) throw DocumentError("event names must be strings");
    if (!seen.insert(name.get<std::string>()).second)
      throw DocumentError("duplicate event name \"" + name.get<std::string>() + "\"");
    stn.add_event(name.get<std::string>());
  }

  const json& temporal = doc["temporal"];
  require_fields(temporal, "temporal", {"type", "constraints"},
                 {"contingent", "udns", "probability"});
  if (!temporal["constraints"].is_array())
    throw DocumentError("constraints must be an array");
  for (const auto& c : temporal["constraints"])
    stn.constraints.push_back(stc_from(c, stn));

  const std::string type = temporal["type"].is_string()
                               ? temporal["type"].get<std::string>()
                               : throw DocumentError("temporal type must be a string");
  Atn atn;
  if (type == "stn") {
    if (temporal.contains("contingent") || temporal.contains("udns") ||
        temporal.contains("probability"))
      throw DocumentError("stn documents take no uncertainty fields");
    atn = std::move(stn);
  } else if (type == "stnu") {
    if (temporal.contains("udns") || temporal.contains("probability"))
      throw DocumentError("stnu documents take no pstn fields");
    if (!temporal.contains("contingent") || !temporal["contingent"].is_array())
      throw DocumentError("stnu documents need a contingent array");
    Stnu stnu;
    for (const auto& l : temporal["contingent"]) {
      require_fields(l, "contingent link", {"from", "to", "lb", "ub"});
      ContingentLink link;
      link.from = event_ref(l["from"], stn, "contingent link");
      link.to = event_ref(l["to"], stn, "contingent link");
      if (!l["lb"].is_number() || !l["ub"].is_number())
        throw DocumentError("contingent bounds must be finite numbers");
      link.lower = l["lb"].get<double>();
      link.upper = l["ub"].get<double>();
      if (!(0.0 <= link.lower && link.lower <= link.upper))
        throw DocumentError("contingent link needs 0 <= lb <= ub");
      stnu.contingent.push_back(link);
    }
    stnu.base = std::move(stn);
    atn = std::move(stnu);
  } else if (type == "pstn") {
    if (temporal.contains("contingent"))
      throw DocumentError("pstn documents take no contingent array");
    if (!temporal.contains("udns") || !temporal["udns"].is_array())
      throw DocumentError("pstn documents need a udns array");
    if (!temporal.contains("probability") || !temporal["probability"].is_number())
      throw DocumentError("pstn documents need a probability");
    Pstn pstn;
    pstn.probability = temporal["probability"].get<double>();
    if (!(pstn.probability > 0.0 && pstn.probability < 1.0))
      throw DocumentError("probability must lie in (0,1)");
    for (const auto& u : temporal["udns"]) {
      require_fields(u, "uncertain duration", {"from", "to", "dist"});
      UncertainDuration ud;
      ud.from = event_ref(u["from"], stn, "uncertain duration");
      ud.to = event_ref(u["to"], stn, "uncertain duration");
      require_fields(u["dist"], "dist", {"type", "mean", "std"});
      if (!u["dist"]["type"].is_string() ||
          u["dist"]["type"].get<std::string>() != "normal")
        throw DocumentError("only normal distributions are supported");
      if (!u["dist"]["mean"].is_number() || !u["dist"]["std"].is_number())
        throw DocumentError("dist mean/std must be numbers");
      ud.dist.mean = u["dist"]["mean"].get<double>();
      ud.dist.stddev = u["dist"]["std"].get<double>();
      if (!(ud.dist.stddev > 0.0))
        throw DocumentError("dist std must be positive");
      pstn.udns.push_back(ud);
    }
    pstn.base = std::move(stn);
    atn = std::move(pstn);
  } else {
    throw DocumentError("temporal type must be stn, stnu, or pstn");
  }

  const Stn& base = base_stn(atn);
  std::vector<ResourceConstraint> resources;
  if (!doc["resources"].is_array())
    throw DocumentError("resources must be an array");
  for (const auto& r : doc["resources"]) {
    require_fields(r, "resource constraint", {"start", "end", "rate"});
    ResourceConstraint rc;
    rc.start = event_ref(r["start"], base, "resource constraint");
    rc.end = event_ref(r["end"], base, "resource constraint");
    if (rc.start == rc.end)
      throw DocumentError("resource constraint over an empty interval");
    if (!r["rate"].is_number())
      throw DocumentError("resource rate must be a number");
    rc.rate = r["rate"].get<double>();
    if (rc.rate == 0.0 || !std::isfinite(rc.rate))
      throw DocumentError("resource rate must be finite and nonzero");
    resources.push_back(rc);
  }

  Trn trn{std::move(atn), std::move(resources)};
  try {
    validate(base_stn(trn.atn));
  } catch (const MalformedNetworkError& e) {
    throw DocumentError(e.what());
  }
  return trn;
}

json trn_to_json(const Trn& trn) {
  const Stn& base = base_stn(trn.atn);
  json doc;
  doc["version"] = 1;
  doc["events"] = base.events;

  json temporal;
  temporal["constraints"] = json::array();
  for (const Stc& c : base.constraints)
    temporal["constraints"].push_back(stc_to(c, base));
  if (std::holds_alternative<Stn>(trn.atn)) {
    temporal["type"] = "stn";
  } else if (const auto* stnu = std::get_if<Stnu>(&trn.atn)) {
    temporal["type"] = "stnu";
    temporal["contingent"] = json::array();
    for (const auto& l : stnu->contingent)
      temporal["contingent"].push_back({{"from", base.events[l.from]},
                                        {"to", base.events[l.to]},
                                        {"lb", l.lower},
                                        {"ub", l.upper}});
  } else {
    const auto& pstn = std::get<Pstn>(trn.atn);
    temporal["type"] = "pstn";
    temporal["probability"] = pstn.probability;
    temporal["udns"] = json::array();
    for (const auto& u : pstn.udns)
      temporal["udns"].push_back(
          {{"from", base.events[u.from]},
           {"to", base.events[u.to]},
           {"dist",
            {{"type", "normal"}, {"mean", u.dist.mean}, {"std", u.dist.stddev}}}});
  }
  doc["temporal"] = std::move(temporal);

  doc["resources"] = json::array();
  for (const auto& rc : trn.resources)
    doc["resources"].push_back({{"start", base.events[rc.start]},
                                {"end", base.events[rc.end]},
                                {"rate", rc.rate}});
  return doc;
}

Trn load_trn(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DocumentError("cannot open " + path);
  json doc;
  try {
    f >> doc;
  } catch (const json::parse_error& e) {
    throw DocumentError(std::string("invalid JSON: ") + e.what());
  }
  return trn_from_json(doc);
}

void save_trn(const Trn& trn, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << trn_to_json(trn).dump(2) << "\n";
}

nlohmann::json schedule_to_json(const Trn& trn, const Schedule& s,
                                std::optional<double> risk_bound) {
  const Stn& base = base_stn(trn.atn);
  json out;
  out["version"] = 1;
  out["schedule"] = json::object();
  for (const auto& [e, t] : s) out["schedule"][base.events.at(e)] = t;
  if (risk_bound) out["risk_bound"] = *risk_bound;
  return out;
}

}  // namespace trn
