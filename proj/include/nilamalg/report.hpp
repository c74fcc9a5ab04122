#ifndef NILAMALG_REPORT_HPP_
#define NILAMALG_REPORT_HPP_

// Running checkers by selector and rendering their reports.
//
// JSON schema (keys in this order):
//   { "instance": {"A": {"name", "order"}, "B": .., "D": ..},
//     "results": [ Result ... ],
//     "all_hold": bool }
//   Result  = { "selector", "status": "holds"|"violated"|"not_applicable",
//               "reason"?, "timing_ms"?, "report"? }
//   Report  = { "condition", "holds", "criterion"?, "witness"?, "notes",
//               "parts" }
//   Witness = { "q"?, "elements": [{"name", "group": "A"|"B"|"D", "word"}],
//               "tuple"? }
//   Tuple   = { "d", "entries": [{"q", "x", "x'", "y", "y'"}] }
// Integers are rendered as decimal strings.

#include <chrono>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "conditions.hpp"
#include "counterexample.hpp"
#include "errors.hpp"
#include "instance.hpp"
#include "word.hpp"

namespace nilamalg {

  using Json = nlohmann::ordered_json;

  inline std::vector<std::string> const& condition_selectors() {
    static std::vector<std::string> const s{"cond1",     "cond2",         "korollar3", "star",
                                            "star_star", "satz2_central", "decide"};
    return s;
  }

  inline std::optional<ConditionId> condition_from_string(std::string const& s) {
    for (auto id : {ConditionId::condition1, ConditionId::condition2, ConditionId::korollar3,
                    ConditionId::korollar3_b, ConditionId::star, ConditionId::star_star,
                    ConditionId::satz2_central, ConditionId::decide}) {
      if (to_string(id) == s) {
        return id;
      }
    }
    return std::nullopt;
  }

  struct CheckOptions {
    Condition2Method method = Condition2Method::closure;
    std::size_t      k_max  = 3;
  };

  struct CheckOutcome {
    enum class Status { holds, violated, not_applicable };

    std::string                    selector;
    Status                         status = Status::holds;
    std::optional<ConditionReport> report;
    std::string                    reason;
    double                         milliseconds = 0;
  };

  inline std::string to_string(CheckOutcome::Status s) {
    switch (s) {
      case CheckOutcome::Status::holds: return "holds";
      case CheckOutcome::Status::violated: return "violated";
      default: return "not_applicable";
    }
  }

  inline ConditionReport run_condition(AmalgamInstance const& inst,
                                       std::string const&     selector,
                                       CheckOptions const&    opt) {
    if (selector == "cond1") {
      return check_condition1(inst);
    }
    if (selector == "cond2") {
      return check_condition2(inst, opt.method, opt.k_max);
    }
    if (selector == "korollar3") {
      return check_korollar3(inst);
    }
    if (selector == "star") {
      return check_star(inst);
    }
    if (selector == "star_star") {
      return check_star_star(inst);
    }
    if (selector == "satz2_central") {
      return check_satz2_central(inst);
    }
    if (selector == "decide") {
      return decide_embeddability(inst);
    }
    throw InvalidArgument("unknown condition '" + selector + "'");
  }

  // Selector "all" runs every condition, recording unmet preconditions as
  // not applicable.
  inline std::vector<CheckOutcome> run_check(AmalgamInstance const& inst,
                                             std::string const&     selector,
                                             CheckOptions const&    opt = {}) {
    std::vector<std::string> chosen
        = selector == "all" ? condition_selectors() : std::vector<std::string>{selector};
    std::vector<CheckOutcome> out;
    for (auto const& s : chosen) {
      CheckOutcome o;
      o.selector = s;
      auto t0    = std::chrono::steady_clock::now();
      try {
        o.report = run_condition(inst, s, opt);
        o.status = o.report->holds ? CheckOutcome::Status::holds : CheckOutcome::Status::violated;
      } catch (PreconditionError const& e) {
        if (selector != "all") {
          throw;
        }
        o.status = CheckOutcome::Status::not_applicable;
        o.reason = e.what();
      }
      o.milliseconds
          = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      out.push_back(std::move(o));
    }
    return out;
  }

  inline bool all_hold(std::vector<CheckOutcome> const& outcomes) {
    for (auto const& o : outcomes) {
      if (o.status == CheckOutcome::Status::violated) {
        return false;
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // JSON
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline std::string role(AmalgamInstance const& inst, Element const& u) {
      if (u.group() == inst.A) {
        return "A";
      }
      if (u.group() == inst.B) {
        return "B";
      }
      if (u.group() == inst.D) {
        return "D";
      }
      throw MismatchedGroups();
    }

    inline PresentationPtr const& group_of_role(AmalgamInstance const& inst, std::string const& r) {
      if (r == "A") {
        return inst.A;
      }
      if (r == "B") {
        return inst.B;
      }
      if (r == "D") {
        return inst.D;
      }
      throw InvalidArgument("unknown group role '" + r + "'");
    }

    inline Json witness_json(AmalgamInstance const& inst, Witness const& w) {
      Json j = Json::object();
      if (w.q) {
        j["q"] = to_string(*w.q);
      }
      Json elems = Json::array();
      for (auto const& [name, e] : w.elements) {
        elems.push_back({{"name", name}, {"group", role(inst, e)}, {"word", to_string(e)}});
      }
      j["elements"] = std::move(elems);
      if (w.tuple) {
        Json entries = Json::array();
        for (auto const& t : w.tuple->entries) {
          entries.push_back({{"q", to_string(t.q)},
                             {"x", to_string(t.x)},
                             {"x'", to_string(t.x_prime)},
                             {"y", to_string(t.y)},
                             {"y'", to_string(t.y_prime)}});
        }
        j["tuple"] = {{"d", to_string(w.tuple->d)}, {"entries", std::move(entries)}};
      }
      return j;
    }
  }  // namespace detail

  inline Json to_json(AmalgamInstance const& inst, ConditionReport const& r) {
    Json j;
    j["condition"] = to_string(r.id);
    j["holds"]     = r.holds;
    if (!r.criterion.empty()) {
      j["criterion"] = r.criterion;
    }
    if (r.witness) {
      j["witness"] = detail::witness_json(inst, *r.witness);
    }
    j["notes"] = r.notes;
    Json parts = Json::array();
    for (auto const& p : r.parts) {
      parts.push_back(to_json(inst, p));
    }
    j["parts"] = std::move(parts);
    return j;
  }

  inline Json to_json(AmalgamInstance const&           inst,
                      std::vector<CheckOutcome> const& outcomes,
                      bool                             timing = false) {
    auto group = [](PresentationPtr const& p) {
      auto n = p->order();
      return Json{{"name", p->name()}, {"order", n ? to_string(*n) : std::string("infinite")}};
    };
    Json j;
    j["instance"] = {{"A", group(inst.A)}, {"B", group(inst.B)}, {"D", group(inst.D)}};
    Json results  = Json::array();
    for (auto const& o : outcomes) {
      Json r;
      r["selector"] = o.selector;
      r["status"]   = to_string(o.status);
      if (!o.reason.empty()) {
        r["reason"] = o.reason;
      }
      if (timing) {
        r["timing_ms"] = o.milliseconds;
      }
      if (o.report) {
        r["report"] = to_json(inst, *o.report);
      }
      results.push_back(std::move(r));
    }
    j["results"]  = std::move(results);
    j["all_hold"] = all_hold(outcomes);
    return j;
  }

  // Rebuild a report from its JSON form, re-parsing every witness word in
  // the group it names.
  inline ConditionReport report_from_json(AmalgamInstance const& inst, Json const& j) {
    ConditionReport r;
    auto            id = condition_from_string(j.at("condition").get<std::string>());
    if (!id) {
      throw InvalidArgument("unknown condition in report");
    }
    r.id    = *id;
    r.holds = j.at("holds").get<bool>();
    if (j.contains("criterion")) {
      r.criterion = j["criterion"].get<std::string>();
    }
    for (auto const& n : j.at("notes")) {
      r.notes.push_back(n.get<std::string>());
    }
    if (j.contains("witness")) {
      Json const& w = j["witness"];
      Witness     out;
      if (w.contains("q")) {
        out.q = Int(w["q"].get<std::string>());
      }
      for (auto const& e : w.at("elements")) {
        PresentationPtr const& g = detail::group_of_role(inst, e.at("group").get<std::string>());
        out.elements.emplace_back(e.at("name").get<std::string>(),
                                  evaluate(g, e.at("word").get<std::string>()));
      }
      if (w.contains("tuple")) {
        ConditionTwoTuple t{{}, evaluate(inst.D, w["tuple"].at("d").get<std::string>())};
        for (auto const& e : w["tuple"].at("entries")) {
          t.entries.push_back({Int(e.at("q").get<std::string>()),
                               evaluate(inst.A, e.at("x").get<std::string>()),
                               evaluate(inst.A, e.at("x'").get<std::string>()),
                               evaluate(inst.B, e.at("y").get<std::string>()),
                               evaluate(inst.B, e.at("y'").get<std::string>())});
        }
        out.tuple = std::move(t);
      }
      r.witness = std::move(out);
    }
    for (auto const& p : j.at("parts")) {
      r.parts.push_back(report_from_json(inst, p));
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Text
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline void text_report(std::ostream&          out,
                            AmalgamInstance const& inst,
                            ConditionReport const& r,
                            std::string const&     indent) {
      out << indent << to_string(r.id) << ": " << (r.holds ? "holds" : "VIOLATED");
      if (!r.criterion.empty()) {
        out << " (criterion " << r.criterion << ")";
      }
      out << "\n";
      if (r.witness) {
        Witness const& w = *r.witness;
        if (w.q) {
          out << indent << "  q = " << *w.q << "\n";
        }
        for (auto const& [name, e] : w.elements) {
          out << indent << "  " << name << " = " << to_string(e) << "  in " << role(inst, e)
              << "\n";
        }
        if (w.tuple) {
          out << indent << "  d = " << to_string(w.tuple->d) << ", product of "
              << w.tuple->entries.size() << " factor(s):\n";
          for (auto const& t : w.tuple->entries) {
            out << indent << "    q = " << t.q << ", x = " << to_string(t.x)
                << ", x' = " << to_string(t.x_prime) << ", y = " << to_string(t.y)
                << ", y' = " << to_string(t.y_prime) << "\n";
          }
        }
      }
      for (auto const& n : r.notes) {
        out << indent << "  note: " << n << "\n";
      }
      for (auto const& p : r.parts) {
        text_report(out, inst, p, indent + "  ");
      }
    }
  }  // namespace detail

  inline std::string to_text(AmalgamInstance const&           inst,
                             std::vector<CheckOutcome> const& outcomes,
                             bool                             timing = false) {
    std::ostringstream out;
    for (auto const& o : outcomes) {
      if (o.status == CheckOutcome::Status::not_applicable) {
        out << o.selector << ": not applicable (" << o.reason << ")\n";
      } else {
        detail::text_report(out, inst, *o.report, "");
      }
      if (timing) {
        out << "  time: " << o.milliseconds << " ms\n";
      }
    }
    out << (all_hold(outcomes) ? "all selected conditions hold\n"
                               : "some selected condition is violated\n");
    return out.str();
  }

  ////////////////////////////////////////////////////////////////////////
  // Counterexample reports
  ////////////////////////////////////////////////////////////////////////

  inline Json to_json(CounterexampleBundle const& c, CounterexampleReport const& r) {
    Json j;
    j["q"]       = to_string(c.q);
    j["variant"] = c.modulus ? "finite" : "integral";
    if (c.modulus) {
      j["modulus"] = to_string(*c.modulus);
    }
    j["witness"] = {{"a", to_string(c.a)}, {"b", to_string(c.b)}};
    Json checks  = Json::array();
    for (auto const& s : r.checks) {
      Json k{{"id", s.id},
             {"description", s.description},
             {"status", s.skipped ? "skipped" : s.passed ? "pass" : "fail"}};
      if (!s.detail.empty()) {
        k["detail"] = s.detail;
      }
      checks.push_back(std::move(k));
    }
    j["checks"] = std::move(checks);
    j["passed"] = r.passed();
    return j;
  }

  inline std::string to_text(CounterexampleBundle const& c, CounterexampleReport const& r) {
    std::ostringstream out;
    out << "counterexample q = " << c.q << ", D = "
        << (c.modulus ? "Heisenberg mod " + to_string(*c.modulus) : std::string("Heisenberg over Z"))
        << ", witness a = " << to_string(c.a) << ", b = " << to_string(c.b) << "\n";
    for (auto const& s : r.checks) {
      out << "  (" << s.id << ") " << (s.skipped ? "skipped" : s.passed ? "pass" : "FAIL") << "  "
          << s.description;
      if (!s.detail.empty()) {
        out << "  [" << s.detail << "]";
      }
      out << "\n";
    }
    out << (r.passed() ? "all sub-checks pass\n" : "some sub-check FAILED\n");
    return out.str();
  }

}  // namespace nilamalg

#endif  // NILAMALG_REPORT_HPP_
