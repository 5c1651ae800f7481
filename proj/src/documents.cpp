#include "hallmed/documents.hpp"

#include <algorithm>

#include "hallmed/newick.hpp"

namespace hallmed {

namespace {

using nlohmann::json;

json set_json(const SetSystem& c, const ElementSet& s) { return c.names_of(s); }

json family_json(const SetSystem& c, const std::vector<ElementSet>& family) {
  json out = json::array();
  for (const auto& s : family) out.push_back(set_json(c, s));
  return out;
}

const char* status_text(Status s) { return s == Status::Satisfied ? "satisfied" : "violated"; }

std::string family_text(const SetSystem& c, const std::vector<ElementSet>& family) {
  std::string out = "{";
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (i) out += ", ";
    out += c.format_set(family[i]);
  }
  return out + "}";
}

// "v12" after "v3".
bool vertex_name_less(const std::string& a, const std::string& b) {
  return std::make_pair(a.size(), a) < std::make_pair(b.size(), b);
}

}  // namespace

json to_json(const SetSystem& c, const CheckOutcome& outcome) {
  json doc;
  doc["status"] = status_text(outcome.status);
  if (outcome.satisfied()) return doc;
  json witness;
  witness["kind"] = outcome.kind == WitnessKind::DeletedPair ? "deleted_pair" : "subfamily";
  witness["sets"] = family_json(c, outcome.subfamily);
  if (outcome.pair) {
    witness["pair"] = {std::string(c.name(outcome.pair->first)), std::string(c.name(outcome.pair->second))};
  }
  witness["arithmetic"] = {{"union", outcome.union_size},
                           {"count", outcome.subfamily.size()},
                           {"required", outcome.subfamily.size() + 2}};
  doc["witness"] = std::move(witness);
  return doc;
}

json to_json(const SetSystem& c, const PartitionCheckOutcome& outcome) {
  json doc;
  doc["status"] = outcome.satisfied() ? "satisfied" : "violated";
  doc["inequality"] = outcome.inequality == Status::Satisfied ? "holds" : "violated";
  doc["equality"] = outcome.equality == Status::Satisfied ? "holds" : "violated";
  doc["deficit"] = outcome.deficit;
  switch (outcome.kind) {
    case PartitionWitnessKind::None:
      break;
    case PartitionWitnessKind::Subfamily:
      doc["witness"] = {{"kind", "subfamily"},
                        {"sets", family_json(c, outcome.subfamily)},
                        {"arithmetic",
                         {{"union", outcome.union_size},
                          {"weight", outcome.weight},
                          {"required", outcome.weight + 2}}}};
      break;
    case PartitionWitnessKind::Intersection: {
      ElementSet common;
      std::set_intersection(outcome.pair->first.begin(), outcome.pair->first.end(), outcome.pair->second.begin(),
                            outcome.pair->second.end(), std::back_inserter(common));
      doc["witness"] = {{"kind", "intersection"},
                        {"sets", family_json(c, {outcome.pair->first, outcome.pair->second})},
                        {"common", set_json(c, common)}};
      break;
    }
    case PartitionWitnessKind::Deficit:
      doc["witness"] = {{"kind", "deficit"}, {"deficit", outcome.deficit}};
      break;
  }
  return doc;
}

json to_json(const Tree& t, const SetSystem& c, const VerificationReport& report, bool partition) {
  const auto names = canonical_vertex_names(t);
  json doc;
  doc["verdict"] = report.passed() ? "pass" : "fail";
  json assignment = json::array();
  for (std::size_t i = 0; i < c.size(); ++i) {
    json entry;
    entry["set"] = set_json(c, c.sets()[i]);
    const auto& block = report.assignment.vertices[i];
    if (partition) {
      std::vector<std::string> vs;
      for (VertexId v : block) vs.push_back(names[v]);
      std::sort(vs.begin(), vs.end(), vertex_name_less);
      entry["vertices"] = vs;
    } else {
      entry["vertex"] = names[block.front()];
    }
    assignment.push_back(std::move(entry));
  }
  std::sort(assignment.begin(), assignment.end(),
            [](const json& a, const json& b) { return a["set"] < b["set"]; });
  doc["assignment"] = std::move(assignment);
  json collisions = json::array();
  for (const auto& col : report.collisions) {
    collisions.push_back({{"sets", family_json(c, {col.first, col.second})}, {"vertex", names[col.vertex]}});
  }
  doc["collisions"] = std::move(collisions);
  std::vector<std::string> uncovered;
  for (VertexId v : report.uncovered) uncovered.push_back(names[v]);
  std::sort(uncovered.begin(), uncovered.end(), vertex_name_less);
  doc["uncovered"] = uncovered;
  return doc;
}

json trace_to_json(const SetSystem& c, const std::vector<ReductionStep>& trace) {
  auto name = [&c](ElementId e) { return std::string(c.name(e)); };
  json steps = json::array();
  for (const auto& step : trace) {
    json entry = std::visit(
        [&](const auto& s) -> json {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Degree1Step>) {
            return {{"step", "degree1"}, {"x", name(s.x)}, {"a", name(s.a)}, {"b", name(s.b)}};
          } else if constexpr (std::is_same_v<T, CaseIStep>) {
            return {{"step", "case_i"}, {"x", name(s.x)}, {"a", name(s.a)}, {"b", name(s.b)},
                    {"b_prime", name(s.b_prime)}};
          } else if constexpr (std::is_same_v<T, CaseIIStep>) {
            return {{"step", "case_ii"}, {"x", name(s.x)}, {"a", name(s.a)}, {"b", name(s.b)},
                    {"a_prime", name(s.a_prime)}, {"b_prime", name(s.b_prime)},
                    {"branch", s.branch == Branch::UseC1 ? "C1" : "C2"}};
          } else {
            std::vector<std::string> elements;
            for (ElementId e : s.elements) elements.push_back(name(e));
            return {{"step", "uncovered"}, {"elements", elements}};
          }
        },
        step.kind);
    std::vector<std::string> ground;
    for (ElementId e : step.reduced.ground()) ground.push_back(name(e));
    entry["reduced"] = {{"elements", ground}, {"sets", family_json(c, sorted_sets(step.reduced.sets()))}};
    steps.push_back(std::move(entry));
  }
  return steps;
}

std::string describe(const SetSystem& c, const CheckOutcome& outcome) {
  if (outcome.satisfied()) return "Satisfied";
  std::string out = "Violated: ";
  if (outcome.pair) {
    out += "deleting {" + std::string(c.name(outcome.pair->first)) + "," +
           std::string(c.name(outcome.pair->second)) + "} leaves no distinct representatives; ";
  }
  out += "subfamily " + family_text(c, outcome.subfamily) + " covers " + std::to_string(outcome.union_size) +
         " elements, needs " + std::to_string(outcome.subfamily.size() + 2);
  return out;
}

std::string describe(const SetSystem& c, const PartitionCheckOutcome& outcome) {
  switch (outcome.kind) {
    case PartitionWitnessKind::None:
      return "Satisfied";
    case PartitionWitnessKind::Subfamily:
      return "Violated: subfamily " + family_text(c, outcome.subfamily) + " covers " +
             std::to_string(outcome.union_size) + " elements, needs " + std::to_string(outcome.weight + 2);
    case PartitionWitnessKind::Intersection:
      return "Violated: " + c.format_set(outcome.pair->first) + " and " + c.format_set(outcome.pair->second) +
             " share three or more elements";
    case PartitionWitnessKind::Deficit:
      return "Violated: |X| - 2 differs from the summed block sizes by " + std::to_string(outcome.deficit);
  }
  return "";
}

}  // namespace hallmed
