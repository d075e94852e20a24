#include "qpcert/serialize.hpp"

#include <json.hpp>

#include "qpcert/errors.hpp"

namespace qpcert {

namespace {

using nlohmann::json;

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError("expected a number", path);
  return j.get<double>();
}

Vector vector_at(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError("expected an array of numbers", path);
  Vector v = Vector::zeros(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v.ref(i) = number_at(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

Matrix block_at(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError("expected an array of rows", path);
  const std::size_t n = j.size();
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = j[i];
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != n)
      throw ParseError("block must be square", rp);
    for (std::size_t k = 0; k < n; ++k)
      b(i, k) = number_at(row[k], rp + "[" + std::to_string(k) + "]");
  }
  return b;
}

QuadraticFunction quadratic_at(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError("expected an object", path);
  QuadraticFunction q;
  if (j.contains("block")) q.op.block = block_at(j["block"], path + ".block");
  if (j.contains("tail")) q.op.tail = number_at(j["tail"], path + ".tail");
  if (j.contains("c")) q.lin = vector_at(j["c"], path + ".c");
  if (j.contains("const")) q.constant = number_at(j["const"], path + ".const");
  return q;
}

}  // namespace

Problem parse_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("problem file must be a JSON object");

  Problem p;
  if (!j.contains("space")) throw ParseError("missing field", "space");
  {
    const json& s = j["space"];
    if (!s.is_object() || !s.contains("kind") || !s["kind"].is_string())
      throw ParseError("space needs a string 'kind'", "space");
    const std::string kind = s["kind"].get<std::string>();
    if (kind == "finite") {
      if (!s.contains("dim")) throw ParseError("finite space needs 'dim'", "space.dim");
      if (!s["dim"].is_number_integer() || s["dim"].get<long long>() < 1)
        throw ParseError("dim must be a positive integer", "space.dim");
      p.space = SpaceDesc::finite(s["dim"].get<std::size_t>());
    } else if (kind == "sequence") {
      p.space = SpaceDesc::sequence();
    } else {
      throw ParseError("kind must be 'finite' or 'sequence'", "space.kind");
    }
  }
  if (!j.contains("objective")) throw ParseError("missing field", "objective");
  p.objective = quadratic_at(j["objective"], "objective");
  if (j.contains("constraints")) {
    const json& cs = j["constraints"];
    if (!cs.is_array()) throw ParseError("expected an array", "constraints");
    for (std::size_t i = 0; i < cs.size(); ++i)
      p.constraints.push_back(
          quadratic_at(cs[i], "constraints[" + std::to_string(i) + "]"));
  }

  const ValidationReport rep = validate_problem(p);
  if (!rep.ok()) throw ValidationFailure("invalid problem: " + rep.issues.front().message);
  return p;
}

namespace {

json quadratic_to_json(const QuadraticFunction& q) {
  json j;
  json block = json::array();
  for (std::size_t i = 0; i < q.op.head_dim(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < q.op.head_dim(); ++k) row.push_back(q.op.block(i, k));
    block.push_back(row);
  }
  j["block"] = block;
  j["tail"] = q.op.tail;
  j["c"] = q.lin.coords();
  j["const"] = q.constant;
  return j;
}

}  // namespace

std::string render_problem(const Problem& p) {
  json j;
  if (p.space.is_finite())
    j["space"] = {{"kind", "finite"}, {"dim", p.space.dim}};
  else
    j["space"] = {{"kind", "sequence"}};
  j["objective"] = quadratic_to_json(p.objective);
  json cs = json::array();
  for (const auto& g : p.constraints) cs.push_back(quadratic_to_json(g));
  j["constraints"] = cs;
  return j.dump(2) + "\n";
}

}  // namespace qpcert
