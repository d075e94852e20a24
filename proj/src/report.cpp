#include "qpcert/report.hpp"

#include <cmath>
#include <cstdio>

#include "qpcert/errors.hpp"

namespace qpcert {

ReportFormat parse_format(const std::string& s) {
  if (s == "text") return ReportFormat::Text;
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  throw Error("unknown format '" + s + "' (expected text|json|csv)");
}

std::string fmt_num(double v) {
  if (std::isnan(v)) return "null";
  if (std::isinf(v)) return v > 0 ? "1e400" : "-1e400";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

/// Append-only JSON writer with declared key order; numbers via fmt_num.
class Jw {
 public:
  Jw& obj() { return open('{'); }
  Jw& arr() { return open('['); }
  Jw& end() {
    const char c = stack_.back();
    stack_.pop_back();
    first_.pop_back();
    s_ += c == '{' ? '}' : ']';
    return *this;
  }
  Jw& key(const std::string& k) {
    pre_item();
    s_ += '"';
    s_ += escape(k);
    s_ += "\":";
    pending_value_ = true;
    return *this;
  }
  Jw& str(const std::string& v) {
    pre_item();
    s_ += '"';
    s_ += escape(v);
    s_ += '"';
    return *this;
  }
  Jw& num(double v) {
    pre_item();
    s_ += fmt_num(v);
    return *this;
  }
  Jw& integer(long long v) {
    pre_item();
    s_ += std::to_string(v);
    return *this;
  }
  Jw& boolean(bool v) {
    pre_item();
    s_ += v ? "true" : "false";
    return *this;
  }
  Jw& null() {
    pre_item();
    s_ += "null";
    return *this;
  }
  Jw& vec(const Vector& v) {
    arr();
    for (std::size_t i = 0; i < v.size(); ++i) num(v[i]);
    return end();
  }
  std::string take() { return s_ + "\n"; }

 private:
  Jw& open(char c) {
    pre_item();
    s_ += c;
    stack_.push_back(c);
    first_.push_back(true);
    return *this;
  }
  void pre_item() {
    if (pending_value_) {
      pending_value_ = false;  // value right after its key
      return;
    }
    if (!stack_.empty()) {
      if (!first_.back()) s_ += ',';
      first_.back() = false;
    }
  }
  std::string s_;
  std::string stack_;
  std::vector<bool> first_;
  bool pending_value_ = false;
};

std::string vec_text(const Vector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += fmt_num(v[i]);
  }
  return s + "]";
}

void verdict_json(Jw& w, const Verdict& v) {
  w.obj();
  w.key("status").str(to_string(v.status));
  if (v.witness)
    w.key("witness").vec(*v.witness);
  if (v.witness_point)
    w.key("witness_point").vec(*v.witness_point);
  w.key("notes").arr();
  for (const auto& n : v.notes) w.str(n);
  w.end();
  w.end();
}

void verdict_text(std::string& out, const std::string& name, const Verdict& v) {
  out += "  " + name + ": " + to_string(v.status);
  if (v.witness) out += "  witness " + vec_text(*v.witness);
  for (const auto& n : v.notes) out += "\n      - " + n;
  out += "\n";
}

std::string form_text(const FormClass& c) {
  std::string s;
  s += std::string("legendre=") + (c.legendre ? "true" : "false");
  s += std::string(" psd=") + (c.psd ? "true" : "false");
  s += std::string(" wlsc=") + (c.weakly_lsc ? "true" : "false");
  s += std::string(" wcont=") + (c.weakly_continuous ? "true" : "false");
  s += std::string(" compact=") + (c.compact ? "true" : "false");
  s += std::string(" ccr=") + (c.compact_closed_range ? "true" : "false");
  s += " tail=" + fmt_num(c.tail);
  if (borderline_tail(c)) s += " [borderline tail: literal sign]";
  return s;
}

void form_json(Jw& w, const FormClass& c) {
  w.obj();
  w.key("psd").boolean(c.psd);
  w.key("weakly_lsc").boolean(c.weakly_lsc);
  w.key("weakly_continuous").boolean(c.weakly_continuous);
  w.key("legendre").boolean(c.legendre);
  w.key("compact").boolean(c.compact);
  w.key("compact_closed_range").boolean(c.compact_closed_range);
  w.key("tail").num(c.tail);
  w.key("borderline_tail").boolean(borderline_tail(c));
  w.key("spectrum_head").arr();
  for (double v : c.spectrum_head) w.num(v);
  w.end();
  w.end();
}

std::string certificate_text(const Certificate& c) {
  std::string out;
  out += "== certificate ==\n";
  out += std::string("exists: ") + to_string(c.exists) + "\n";
  out += std::string("rule: ") + to_string(c.fired_rule);
  if (c.fired_rule != Certificate::Rule::None)
    out += std::string("\nTheorem: ") + rule_display_name(c.fired_rule);
  out += "\nhypotheses:\n";
  for (const auto& [name, v] : c.hypotheses) verdict_text(out, name, v);
  if (c.witness_point) {
    out += "witness: value " + fmt_num(c.witness_value.value_or(0.0)) + " at " +
           vec_text(*c.witness_point) + "\n";
  } else {
    out += "witness: none\n";
  }
  for (const auto& n : c.notes) out += "note: " + n + "\n";
  return out;
}

void certificate_json_body(Jw& w, const Certificate& c) {
  w.key("exists").str(to_string(c.exists));
  w.key("fired_rule").str(to_string(c.fired_rule));
  w.key("rule_name").str(rule_display_name(c.fired_rule));
  w.key("hypotheses").obj();
  for (const auto& [name, v] : c.hypotheses) {
    w.key(name);
    verdict_json(w, v);
  }
  w.end();
  if (c.witness_point) {
    w.key("witness").obj();
    w.key("point").vec(*c.witness_point);
    w.key("value").num(c.witness_value.value_or(0.0));
    w.end();
  } else {
    w.key("witness").null();
  }
  w.key("notes").arr();
  for (const auto& n : c.notes) w.str(n);
  w.end();
}

std::string kv_csv_escape(const std::string& s) {
  std::string out;
  for (char c : s) out += (c == ',' ? ';' : c);
  return out;
}

}  // namespace

std::string render_certificate(const Certificate& c, ReportFormat f) {
  switch (f) {
    case ReportFormat::Text:
      return certificate_text(c);
    case ReportFormat::Json: {
      Jw w;
      w.obj();
      w.key("type").str("certificate");
      certificate_json_body(w, c);
      w.end();
      return w.take();
    }
    case ReportFormat::Csv: {
      std::string out = "key,value\n";
      out += std::string("exists,") + to_string(c.exists) + "\n";
      out += std::string("fired_rule,") + to_string(c.fired_rule) + "\n";
      for (const auto& [name, v] : c.hypotheses)
        out += name + "," + to_string(v.status) + "\n";
      if (c.witness_value) out += "witness_value," + fmt_num(*c.witness_value) + "\n";
      return out;
    }
  }
  return {};
}

std::string render_analysis(const Analysis& a, ReportFormat f) {
  switch (f) {
    case ReportFormat::Text: {
      std::string out = "== analysis ==\n";
      out += std::string("space: ") +
             (a.normalized.space.is_finite()
                  ? "finite(" + std::to_string(a.normalized.space.dim) + ")"
                  : "sequence") +
             "\n";
      out += "head_dim: " + std::to_string(head_dim(a.normalized)) + "\n";
      out += "objective: " + form_text(a.objective_class) + "\n";
      for (std::size_t i = 0; i < a.constraint_classes.size(); ++i)
        out += "constraint " + std::to_string(i + 1) + ": " +
               form_text(a.constraint_classes[i]) + "\n";
      if (a.feasible_point)
        out += "feasible point: " + vec_text(*a.feasible_point) + "\n";
      out += "recession cone: span_dim=" + std::to_string(a.cone.cone.span_dim()) +
             std::string(" tail_free=") + (a.cone.cone.tail_free ? "true" : "false") +
             "\n";
      std::string cls =
          a.cone.zero_set.classification == ZeroFormSet::Classification::PsdOnSpan
              ? "PsdOnSpan"
              : a.cone.zero_set.classification == ZeroFormSet::Classification::NsdOnSpan
                    ? "NsdOnSpan"
                    : "Indefinite";
      out += "zero-form set: classification=" + cls +
             " zero_dim=" + std::to_string(a.cone.zero_set.zero_subspace_basis.cols()) +
             std::string(" tail_in_zero_set=") +
             (a.cone.zero_set.tail_in_zero_set ? "true" : "false") + "\n";
      out += certificate_text(a.certificate);
      return out;
    }
    case ReportFormat::Json: {
      Jw w;
      w.obj();
      w.key("type").str("analysis");
      w.key("space").str(a.normalized.space.is_finite() ? "finite" : "sequence");
      if (a.normalized.space.is_finite())
        w.key("dim").integer(static_cast<long long>(a.normalized.space.dim));
      w.key("head_dim").integer(static_cast<long long>(head_dim(a.normalized)));
      w.key("objective_class");
      form_json(w, a.objective_class);
      w.key("constraint_classes").arr();
      for (const auto& c : a.constraint_classes) form_json(w, c);
      w.end();
      if (a.feasible_point)
        w.key("feasible_point").vec(*a.feasible_point);
      w.key("cone").obj();
      w.key("span_dim").integer(static_cast<long long>(a.cone.cone.span_dim()));
      w.key("tail_free").boolean(a.cone.cone.tail_free);
      w.end();
      certificate_json_body(w, a.certificate);
      w.end();
      return w.take();
    }
    case ReportFormat::Csv: {
      std::string out = render_certificate(a.certificate, ReportFormat::Csv);
      out += std::string("objective_legendre_flag,") +
             (a.objective_class.legendre ? "true" : "false") + "\n";
      return out;
    }
  }
  return {};
}

std::string render_solution(const Solution& s, ReportFormat f) {
  switch (f) {
    case ReportFormat::Text: {
      std::string out = "== solution ==\n";
      out += "value: " + fmt_num(s.value) + "\n";
      out += "point: " + vec_text(s.point) + "\n";
      out += "multiplier: " + fmt_num(s.multiplier) + "\n";
      out += std::string("case: ") + to_string(s.case_tag) + "\n";
      out += "kkt_residual: " + fmt_num(s.kkt_residual) + "\n";
      if (s.retraction_ray)
        out += "retraction: step " + fmt_num(s.step.value_or(0.0)) + " along " +
               vec_text(*s.retraction_ray) + "\n";
      return out;
    }
    case ReportFormat::Json: {
      Jw w;
      w.obj();
      w.key("type").str("solution");
      w.key("value").num(s.value);
      w.key("point").vec(s.point);
      w.key("multiplier").num(s.multiplier);
      w.key("case").str(to_string(s.case_tag));
      w.key("kkt_residual").num(s.kkt_residual);
      if (s.retraction_ray) {
        w.key("retraction").obj();
        w.key("ray").vec(*s.retraction_ray);
        w.key("step").num(s.step.value_or(0.0));
        w.end();
      } else {
        w.key("retraction").null();
      }
      w.end();
      return w.take();
    }
    case ReportFormat::Csv: {
      std::string out = "key,value\n";
      out += "value," + fmt_num(s.value) + "\n";
      out += "multiplier," + fmt_num(s.multiplier) + "\n";
      out += std::string("case,") + to_string(s.case_tag) + "\n";
      out += "kkt_residual," + fmt_num(s.kkt_residual) + "\n";
      return out;
    }
  }
  return {};
}

std::string render_sweep(const SweepReport& r, ReportFormat f) {
  switch (f) {
    case ReportFormat::Text: {
      std::string out = "== sweep ==\n";
      out += "level  inf_value  minimizer_norm\n";
      for (std::size_t i = 0; i < r.levels.size(); ++i)
        out += std::to_string(r.levels[i]) + "  " + fmt_num(r.inf_values[i]) + "  " +
               fmt_num(r.minimizer_norms[i]) + "\n";
      out += std::string("diagnosis: ") + to_string(r.diagnosis) + "\n";
      for (const auto& n : r.notes) out += "note: " + n + "\n";
      return out;
    }
    case ReportFormat::Json: {
      Jw w;
      w.obj();
      w.key("type").str("sweep");
      w.key("levels").arr();
      for (std::size_t n : r.levels) w.integer(static_cast<long long>(n));
      w.end();
      w.key("inf_values").arr();
      for (double v : r.inf_values) w.num(v);
      w.end();
      w.key("minimizer_norms").arr();
      for (double v : r.minimizer_norms) w.num(v);
      w.end();
      w.key("diagnosis").str(to_string(r.diagnosis));
      w.key("notes").arr();
      for (const auto& n : r.notes) w.str(n);
      w.end();
      w.end();
      return w.take();
    }
    case ReportFormat::Csv: {
      std::string out = "level,inf_value,minimizer_norm\n";
      for (std::size_t i = 0; i < r.levels.size(); ++i)
        out += std::to_string(r.levels[i]) + "," + fmt_num(r.inf_values[i]) + "," +
               fmt_num(r.minimizer_norms[i]) + "\n";
      return out;
    }
  }
  return {};
}

std::string render_fixture(const FixtureResult& r, ReportFormat f) {
  switch (f) {
    case ReportFormat::Text: {
      std::string out = "== fixture " + r.name + " ==\n";
      for (const auto& fact : r.facts) {
        out += std::string(fact.pass ? "PASS" : "FAIL") + "  " + fact.label +
               "  expected=" + fact.expected + "  observed=" + fact.observed + "\n";
        out += "      provenance: " + fact.provenance + "\n";
      }
      for (const auto& n : r.notes) out += "note: " + n + "\n";
      out += std::string("result: ") + (r.ok() ? "PASS" : "FAIL") + "\n";
      return out;
    }
    case ReportFormat::Json: {
      Jw w;
      w.obj();
      w.key("type").str("fixture");
      w.key("name").str(r.name);
      w.key("pass").boolean(r.ok());
      w.key("facts").arr();
      for (const auto& fact : r.facts) {
        w.obj();
        w.key("label").str(fact.label);
        w.key("provenance").str(fact.provenance);
        w.key("expected").str(fact.expected);
        w.key("observed").str(fact.observed);
        w.key("pass").boolean(fact.pass);
        w.end();
      }
      w.end();
      w.key("notes").arr();
      for (const auto& n : r.notes) w.str(n);
      w.end();
      w.end();
      return w.take();
    }
    case ReportFormat::Csv: {
      std::string out = "label,expected,observed,pass\n";
      for (const auto& fact : r.facts)
        out += kv_csv_escape(fact.label) + "," + kv_csv_escape(fact.expected) + "," +
               kv_csv_escape(fact.observed) + "," + (fact.pass ? "true" : "false") +
               "\n";
      return out;
    }
  }
  return {};
}

}  // namespace qpcert
