#ifndef NILAMALG_CONDITIONS_HPP_
#define NILAMALG_CONDITIONS_HPP_

// Embeddability criteria for amalgams of class-two nilpotent groups.
//
// Conventions shared by every checker:
//
//  * Commutators involving an element of D on the "other" side are taken
//    after translating through the abstract D: for a in A and b^q in
//    iota_B(D) the bracket [a, b^q] means [a, iota_A(iota_B^-1(b^q))]
//    evaluated in A, and symmetrically in B.
//  * The universally quantified exponent q runs over 1..lcm(exp A, exp B).
//    Every power appearing in a condition is of an element of A or of B, so
//    q and q + lcm give identical constraints and this range is exhaustive.
//  * Sweeps visit q ascending, then elements in enumeration order (first
//    exponent fastest), so the first witness found is deterministic.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "element.hpp"
#include "embedding.hpp"
#include "errors.hpp"
#include "instance.hpp"
#include "subgroup.hpp"
#include "word.hpp"

namespace nilamalg {

  enum class ConditionId {
    condition1,
    condition2,
    korollar3,
    korollar3_b,
    star,
    star_star,
    satz2_central,
    decide
  };

  inline std::string to_string(ConditionId id) {
    switch (id) {
      case ConditionId::condition1: return "cond1";
      case ConditionId::condition2: return "cond2";
      case ConditionId::korollar3: return "korollar3";
      case ConditionId::korollar3_b: return "korollar3_b";
      case ConditionId::star: return "star";
      case ConditionId::star_star: return "star_star";
      case ConditionId::satz2_central: return "satz2_central";
      default: return "decide";
    }
  }

  // One index of a condition (2) product:  x^q x' in iota_A(D) with x' in
  // A_2, and y^q y' in iota_B(D) with y' in B_2.
  struct TupleEntry {
    Int     q;
    Element x;
    Element x_prime;
    Element y;
    Element y_prime;
  };

  struct ConditionTwoTuple {
    std::vector<TupleEntry> entries;  // k = entries.size()
    Element                 d;        // element of D
  };

  struct Witness {
    std::optional<Int> q;
    // Named elements; the group of each is carried by the element itself.
    std::vector<std::pair<std::string, Element>> elements;
    std::optional<ConditionTwoTuple>             tuple;

    Element const& at(std::string const& name) const {
      for (auto const& [n, e] : elements) {
        if (n == name) {
          return e;
        }
      }
      throw InvalidArgument("witness has no entry " + name);
    }
  };

  struct ConditionReport {
    ConditionId                  id    = ConditionId::condition1;
    bool                         holds = true;
    std::optional<Witness>       witness;
    std::vector<std::string>     notes;
    // decide only: the criterion the verdict rests on
    std::string                  criterion;
    // sub-reports (korollar3: condition (a) and (b); decide: the branch)
    std::vector<ConditionReport> parts;
  };

  enum class Condition2Method { closure, brute };

  namespace detail {

    class FiniteGroup {
     public:
      FiniteGroup() = default;

      explicit FiniteGroup(PresentationPtr p) : group_(std::move(p)), elems_(all_elements(group_)) {
        identity_ = element_index(Element(group_));
      }

      PresentationPtr const& group() const noexcept {
        return group_;
      }
      std::size_t size() const noexcept {
        return elems_.size();
      }
      Element const& operator[](std::size_t i) const {
        return elems_[i];
      }
      std::size_t index(Element const& u) const {
        return element_index(u);
      }
      std::size_t identity() const noexcept {
        return identity_;
      }
      std::size_t mul(std::size_t i, std::size_t j) const {
        return element_index(elems_[i] * elems_[j]);
      }

      // Sorted indices of the elements of s.
      std::vector<std::size_t> indices(Subgroup const& s) const {
        std::vector<std::size_t> out;
        for (auto const& e : s.elements()) {
          out.push_back(index(e));
        }
        std::sort(out.begin(), out.end());
        return out;
      }

      std::vector<char> membership(Subgroup const& s) const {
        std::vector<char> out(size(), 0);
        for (auto i : indices(s)) {
          out[i] = 1;
        }
        return out;
      }

     private:
      PresentationPtr      group_;
      std::vector<Element> elems_;
      std::size_t          identity_ = 0;
    };

    inline constexpr std::int64_t none = -1;

    // Index tables for exhaustive sweeps over a finite instance.
    class SweepContext {
     public:
      explicit SweepContext(AmalgamInstance const& inst) : inst_(inst) {
        if (!inst.is_finite()) {
          throw InfiniteGroupError("exhaustive sweep needs finite A, B and D");
        }
        A_ = FiniteGroup(inst.A);
        B_ = FiniteGroup(inst.B);
        D_ = FiniteGroup(inst.D);
        img_A_.resize(D_.size());
        img_B_.resize(D_.size());
        pre_A_.assign(A_.size(), none);
        pre_B_.assign(B_.size(), none);
        for (std::size_t d = 0; d < D_.size(); ++d) {
          img_A_[d]         = A_.index(inst.iota_A(D_[d]));
          img_B_[d]         = B_.index(inst.iota_B(D_[d]));
          pre_A_[img_A_[d]] = static_cast<std::int64_t>(d);
          pre_B_[img_B_[d]] = static_cast<std::int64_t>(d);
        }
        q_max_ = static_cast<std::size_t>(lcm(group_exponent(inst.A), group_exponent(inst.B)));
        label_cosets(A_, center(inst.A), coset_A_, rep_A_);
        label_cosets(B_, center(inst.B), coset_B_, rep_B_);
        F_.assign(rep_A_.size() * D_.size(), none);
        G_.assign(D_.size() * rep_B_.size(), none);
        pow_A_.resize(A_.size());
        pow_B_.resize(B_.size());
      }

      AmalgamInstance const& instance() const noexcept {
        return inst_;
      }
      FiniteGroup const& A() const noexcept {
        return A_;
      }
      FiniteGroup const& B() const noexcept {
        return B_;
      }
      FiniteGroup const& D() const noexcept {
        return D_;
      }
      std::size_t q_max() const noexcept {
        return q_max_;
      }

      std::int64_t pre_A(std::size_t a) const {
        return pre_A_[a];
      }
      std::int64_t pre_B(std::size_t b) const {
        return pre_B_[b];
      }
      std::size_t img_A(std::size_t d) const {
        return img_A_[d];
      }
      std::size_t img_B(std::size_t d) const {
        return img_B_[d];
      }

      // Move the power tables from exponent q-1 to q (call with q = 1, 2, ...).
      void advance_powers(std::size_t q) {
        for (std::size_t a = 0; a < A_.size(); ++a) {
          pow_A_[a] = q == 1 ? a : A_.mul(pow_A_[a], a);
        }
        for (std::size_t b = 0; b < B_.size(); ++b) {
          pow_B_[b] = q == 1 ? b : B_.mul(pow_B_[b], b);
        }
      }
      std::size_t pow_A(std::size_t a) const {
        return pow_A_[a];
      }
      std::size_t pow_B(std::size_t b) const {
        return pow_B_[b];
      }

      std::size_t coset_A(std::size_t a) const {
        return coset_A_[a];
      }
      std::size_t coset_B(std::size_t b) const {
        return coset_B_[b];
      }

      // [a, iota_A(d)] in A; depends on a only modulo Z(A).
      std::size_t bracket_A(std::size_t a, std::size_t d) {
        auto& slot = F_[coset_A_[a] * D_.size() + d];
        if (slot == none) {
          slot = static_cast<std::int64_t>(
              A_.index(commutator(A_[rep_A_[coset_A_[a]]], A_[img_A_[d]])));
        }
        return static_cast<std::size_t>(slot);
      }

      // [iota_B(d), b] in B; depends on b only modulo Z(B).
      std::size_t bracket_B(std::size_t d, std::size_t b) {
        auto& slot = G_[d * rep_B_.size() + coset_B_[b]];
        if (slot == none) {
          slot = static_cast<std::int64_t>(
              B_.index(commutator(B_[img_B_[d]], B_[rep_B_[coset_B_[b]]])));
        }
        return static_cast<std::size_t>(slot);
      }

     private:
      static void label_cosets(FiniteGroup const&        g,
                               Subgroup const&           z,
                               std::vector<std::size_t>& label,
                               std::vector<std::size_t>& reps) {
        std::vector<Element> zs = z.elements();
        std::size_t const    unset = static_cast<std::size_t>(-1);
        label.assign(g.size(), unset);
        for (std::size_t a = 0; a < g.size(); ++a) {
          if (label[a] != unset) {
            continue;
          }
          std::size_t id = reps.size();
          reps.push_back(a);
          for (auto const& c : zs) {
            label[g.index(g[a] * c)] = id;
          }
        }
      }

      AmalgamInstance const&    inst_;
      FiniteGroup               A_, B_, D_;
      std::vector<std::size_t>  img_A_, img_B_;
      std::vector<std::int64_t> pre_A_, pre_B_;
      std::size_t               q_max_ = 1;
      std::vector<std::size_t>  coset_A_, coset_B_, rep_A_, rep_B_;
      std::vector<std::int64_t> F_, G_;
      std::vector<std::size_t>  pow_A_, pow_B_;
    };

    // (x, x', d) with x^q x' == iota(d), x' ranging over `primes`.
    struct Lift {
      std::size_t x;
      std::size_t x_prime;
      std::size_t d;
    };

    inline std::vector<Lift> lifts_A(SweepContext const& ctx, std::vector<std::size_t> const& primes) {
      std::vector<Lift> out;
      for (std::size_t x = 0; x < ctx.A().size(); ++x) {
        for (auto xp : primes) {
          auto d = ctx.pre_A(ctx.A().mul(ctx.pow_A(x), xp));
          if (d != none) {
            out.push_back({x, xp, static_cast<std::size_t>(d)});
          }
        }
      }
      return out;
    }

    inline std::vector<Lift> lifts_B(SweepContext const& ctx, std::vector<std::size_t> const& primes) {
      std::vector<Lift> out;
      for (std::size_t y = 0; y < ctx.B().size(); ++y) {
        for (auto yp : primes) {
          auto d = ctx.pre_B(ctx.B().mul(ctx.pow_B(y), yp));
          if (d != none) {
            out.push_back({y, yp, static_cast<std::size_t>(d)});
          }
        }
      }
      return out;
    }

    // First lift per (coset of x modulo the centre, d), in sweep order.
    template <typename CosetOf>
    std::vector<Lift> distinct_lifts(std::vector<Lift> const& lifts, CosetOf coset_of) {
      std::map<std::pair<std::size_t, std::size_t>, bool> seen;
      std::vector<Lift>                                   out;
      for (auto const& l : lifts) {
        if (seen.emplace(std::make_pair(coset_of(l.x), l.d), true).second) {
          out.push_back(l);
        }
      }
      return out;
    }

    inline std::string q_range_note(SweepContext const& ctx) {
      return "q swept over 1.." + std::to_string(ctx.q_max()) + " = lcm(exp A, exp B)";
    }

  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // Condition (1): A_2 ∩ D <= Z(B) and B_2 ∩ D <= Z(A)
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    // First generator d of D with iota_from(d) in from_2 and iota_to(d)
    // outside Z(to).
    inline std::optional<Element> condition1_side(PresentationPtr const& from,
                                                  Embedding const&       iota_from,
                                                  PresentationPtr const& to,
                                                  Embedding const&       iota_to) {
      Subgroup meet  = intersect(derived_subgroup(from), iota_from.image());
      Subgroup z     = center(to);
      for (auto const& s : meet.basis()) {
        auto d = iota_from.preimage(s);
        if (!d) {
          throw Error("intersection element outside the image of D");
        }
        if (!z.contains(iota_to(*d))) {
          return d;
        }
      }
      return std::nullopt;
    }
  }  // namespace detail

  inline ConditionReport check_condition1(AmalgamInstance const& inst) {
    ConditionReport report;
    report.id = ConditionId::condition1;
    if (auto d = detail::condition1_side(inst.A, inst.iota_A, inst.B, inst.iota_B)) {
      report.holds   = false;
      report.witness = Witness{std::nullopt, {{"d", *d}, {"in_B", inst.iota_B(*d)}}, std::nullopt};
      report.notes.push_back("iota_A(d) lies in A_2 but iota_B(d) is not central in B");
      return report;
    }
    if (auto d = detail::condition1_side(inst.B, inst.iota_B, inst.A, inst.iota_A)) {
      report.holds   = false;
      report.witness = Witness{std::nullopt, {{"d", *d}, {"in_A", inst.iota_A(*d)}}, std::nullopt};
      report.notes.push_back("iota_B(d) lies in B_2 but iota_A(d) is not central in A");
      return report;
    }
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // Condition (2)
  ////////////////////////////////////////////////////////////////////////

  namespace detail {

    struct PairGenerator {
      std::size_t u;  // in A_2
      std::size_t v;  // in B_2
      TupleEntry  rep;
    };

    inline TupleEntry entry(SweepContext const& ctx, std::size_t q, Lift const& la, Lift const& lb) {
      return {Int(q), ctx.A()[la.x], ctx.A()[la.x_prime], ctx.B()[lb.x], ctx.B()[lb.x_prime]};
    }

    // True iff the pair (u, v) of products breaks the equivalence for some
    // d; *d_out receives that d.
    inline bool pair_violates(SweepContext const& ctx,
                              std::size_t         u,
                              std::size_t         v,
                              std::size_t*        d_out) {
      auto du = ctx.pre_A(u);
      auto dv = ctx.pre_B(v);
      if (du == none && dv == none) {
        return false;
      }
      if (du != none && dv != none && du == dv) {
        return false;
      }
      *d_out = static_cast<std::size_t>(du != none ? du : dv);
      return true;
    }

    inline ConditionReport condition2_closure(SweepContext& ctx) {
      ConditionReport report;
      report.id = ConditionId::condition2;
      report.notes.push_back(q_range_note(ctx));
      report.notes.push_back("method: closure of single-index pairs in A_2 x B_2");

      auto const a2 = ctx.A().indices(derived_subgroup(ctx.instance().A));
      auto const b2 = ctx.B().indices(derived_subgroup(ctx.instance().B));

      std::vector<PairGenerator>                       gens;
      std::map<std::pair<std::size_t, std::size_t>, bool> seen;
      for (std::size_t q = 1; q <= ctx.q_max(); ++q) {
        ctx.advance_powers(q);
        auto la = distinct_lifts(lifts_A(ctx, a2), [&](std::size_t x) { return ctx.coset_A(x); });
        auto lb = distinct_lifts(lifts_B(ctx, b2), [&](std::size_t y) { return ctx.coset_B(y); });
        for (auto const& a : la) {
          for (auto const& b : lb) {
            std::size_t u = ctx.bracket_A(a.x, b.d);
            std::size_t v = ctx.bracket_B(a.d, b.x);
            if (seen.emplace(std::make_pair(u, v), true).second) {
              gens.push_back({u, v, entry(ctx, q, a, b)});
            }
          }
        }
      }

      // Breadth-first closure; parent links recover a shortest product.
      struct Node {
        std::size_t u, v;
        std::int64_t parent;
        std::size_t  gen;
      };
      std::vector<Node>                                          nodes;
      std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
      for (std::size_t g = 0; g < gens.size(); ++g) {
        if (index.emplace(std::make_pair(gens[g].u, gens[g].v), nodes.size()).second) {
          nodes.push_back({gens[g].u, gens[g].v, none, g});
        }
      }
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::size_t d;
        if (pair_violates(ctx, nodes[i].u, nodes[i].v, &d)) {
          ConditionTwoTuple tuple{{}, ctx.D()[d]};
          for (std::int64_t k = static_cast<std::int64_t>(i); k != none; k = nodes[k].parent) {
            tuple.entries.push_back(gens[nodes[k].gen].rep);
          }
          std::reverse(tuple.entries.begin(), tuple.entries.end());
          report.holds   = false;
          report.witness = Witness{std::nullopt,
                                   {{"d", ctx.D()[d]},
                                    {"product_A", ctx.A()[nodes[i].u]},
                                    {"product_B", ctx.B()[nodes[i].v]}},
                                   std::move(tuple)};
          return report;
        }
        for (std::size_t g = 0; g < gens.size(); ++g) {
          std::size_t u = ctx.A().mul(nodes[i].u, gens[g].u);
          std::size_t v = ctx.B().mul(nodes[i].v, gens[g].v);
          if (index.emplace(std::make_pair(u, v), nodes.size()).second) {
            nodes.push_back({u, v, static_cast<std::int64_t>(i), g});
          }
        }
      }
      report.notes.push_back(std::to_string(gens.size()) + " generator pairs, closure of size "
                             + std::to_string(nodes.size()));
      return report;
    }

    // Products of at most k_max single-index pairs, evaluated literally:
    // every bracket recomputed from the tuple, every d in D compared.
    inline ConditionReport condition2_brute(SweepContext& ctx, std::size_t k_max) {
      ConditionReport report;
      report.id = ConditionId::condition2;
      report.notes.push_back(q_range_note(ctx));
      report.notes.push_back("method: brute force, k <= " + std::to_string(k_max));

      AmalgamInstance const& inst = ctx.instance();
      auto const             a2   = ctx.A().indices(derived_subgroup(inst.A));
      auto const             b2   = ctx.B().indices(derived_subgroup(inst.B));

      struct Single {
        std::size_t u, v;
        TupleEntry  rep;
      };
      std::vector<Single>                                 singles;
      std::map<std::pair<std::size_t, std::size_t>, bool> seen;
      for (std::size_t q = 1; q <= ctx.q_max(); ++q) {
        ctx.advance_powers(q);
        auto la = lifts_A(ctx, a2);
        auto lb = lifts_B(ctx, b2);
        for (auto const& a : la) {
          for (auto const& b : lb) {
            Element const& x = ctx.A()[a.x];
            Element const& y = ctx.B()[b.x];
            Element        u = commutator(x, inst.iota_A(ctx.D()[b.d]));
            Element        v = commutator(inst.iota_B(ctx.D()[a.d]), y);
            auto           key = std::make_pair(ctx.A().index(u), ctx.B().index(v));
            if (seen.emplace(key, true).second) {
              singles.push_back({key.first, key.second, entry(ctx, q, a, b)});
            }
          }
        }
      }

      struct Product {
        std::size_t             u, v;
        std::vector<std::size_t> path;
      };
      std::vector<Product> level;
      for (std::size_t s = 0; s < singles.size(); ++s) {
        level.push_back({singles[s].u, singles[s].v, {s}});
      }
      std::map<std::pair<std::size_t, std::size_t>, bool> reached;
      for (std::size_t k = 1; k <= k_max && !level.empty(); ++k) {
        std::vector<Product> fresh;
        for (auto const& p : level) {
          if (!reached.emplace(std::make_pair(p.u, p.v), true).second) {
            continue;
          }
          Element const& u = ctx.A()[p.u];
          Element const& v = ctx.B()[p.v];
          for (std::size_t d = 0; d < ctx.D().size(); ++d) {
            bool lhs = u == inst.iota_A(ctx.D()[d]);
            bool rhs = v == inst.iota_B(ctx.D()[d]);
            if (lhs != rhs) {
              ConditionTwoTuple tuple{{}, ctx.D()[d]};
              for (auto s : p.path) {
                tuple.entries.push_back(singles[s].rep);
              }
              report.holds   = false;
              report.witness = Witness{std::nullopt,
                                       {{"d", ctx.D()[d]}, {"product_A", u}, {"product_B", v}},
                                       std::move(tuple)};
              return report;
            }
          }
          fresh.push_back(p);
        }
        if (k == k_max) {
          break;
        }
        std::vector<Product> next;
        for (auto const& p : fresh) {
          for (std::size_t s = 0; s < singles.size(); ++s) {
            Product n{ctx.A().index(ctx.A()[p.u] * ctx.A()[singles[s].u]),
                      ctx.B().index(ctx.B()[p.v] * ctx.B()[singles[s].v]),
                      p.path};
            n.path.push_back(s);
            if (reached.count(std::make_pair(n.u, n.v)) == 0) {
              next.push_back(std::move(n));
            }
          }
        }
        level = std::move(next);
      }
      report.notes.push_back(std::to_string(singles.size()) + " single-index pairs, "
                             + std::to_string(reached.size()) + " products checked");
      return report;
    }
  }  // namespace detail

  inline ConditionReport check_condition2(AmalgamInstance const& inst,
                                          Condition2Method       method = Condition2Method::closure,
                                          std::size_t            k_max  = 3) {
    if (method == Condition2Method::brute && k_max < 1) {
      throw InvalidArgument("k_max must be at least 1");
    }
    detail::SweepContext ctx(inst);
    return method == Condition2Method::closure ? detail::condition2_closure(ctx)
                                               : detail::condition2_brute(ctx, k_max);
  }

  ////////////////////////////////////////////////////////////////////////
  // Korollar 3 (D normal in A or B): condition (a) = (1), and
  //   (b) [a^q a', b] = [a, b^q b'] in D
  ////////////////////////////////////////////////////////////////////////

  inline ConditionReport check_korollar3_b(AmalgamInstance const& inst) {
    ConditionReport report;
    report.id = ConditionId::korollar3_b;
    detail::SweepContext ctx(inst);
    report.notes.push_back(detail::q_range_note(ctx));
    auto const a2 = ctx.A().indices(derived_subgroup(inst.A));
    auto const b2 = ctx.B().indices(derived_subgroup(inst.B));
    for (std::size_t q = 1; q <= ctx.q_max(); ++q) {
      ctx.advance_powers(q);
      auto la = detail::distinct_lifts(detail::lifts_A(ctx, a2),
                                       [&](std::size_t x) { return ctx.coset_A(x); });
      auto lb = detail::distinct_lifts(detail::lifts_B(ctx, b2),
                                       [&](std::size_t y) { return ctx.coset_B(y); });
      for (auto const& a : la) {
        for (auto const& b : lb) {
          std::size_t in_A = ctx.bracket_A(a.x, b.d);  // [a, b^q b'] in A
          std::size_t in_B = ctx.bracket_B(a.d, b.x);  // [a^q a', b] in B
          auto        dA   = ctx.pre_A(in_A);
          auto        dB   = ctx.pre_B(in_B);
          if (dA == detail::none || dB == detail::none || dA != dB) {
            report.holds   = false;
            report.witness = Witness{Int(q),
                                     {{"a", ctx.A()[a.x]},
                                      {"a'", ctx.A()[a.x_prime]},
                                      {"b", ctx.B()[b.x]},
                                      {"b'", ctx.B()[b.x_prime]},
                                      {"[a,b^q b']", ctx.A()[in_A]},
                                      {"[a^q a',b]", ctx.B()[in_B]}},
                                     std::nullopt};
            return report;
          }
        }
      }
    }
    return report;
  }

  inline bool d_normal_somewhere(AmalgamInstance const& inst) {
    return is_normal(inst.iota_A.image()) || is_normal(inst.iota_B.image());
  }

  inline ConditionReport check_korollar3(AmalgamInstance const& inst) {
    if (!d_normal_somewhere(inst)) {
      throw PreconditionError("korollar3 needs D normal in A or in B");
    }
    if (!inst.is_finite()) {
      throw InfiniteGroupError("korollar3 sweep needs finite A, B and D");
    }
    ConditionReport report;
    report.id = ConditionId::korollar3;
    report.parts.push_back(check_condition1(inst));
    report.parts.push_back(check_korollar3_b(inst));
    report.holds = report.parts[0].holds && report.parts[1].holds;
    for (auto const& p : report.parts) {
      if (!p.holds && !report.witness) {
        report.witness = p.witness;
        report.notes.push_back("fails in " + to_string(p.id));
      }
    }
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // (*) and (**): D co-central in B
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    // Elements from B \ iota_B(D) (or from Z(B)), whose q-th power lies in
    // iota_B(D): first representative per distinct d = iota_B^-1(b^q).
    inline std::vector<std::pair<std::size_t, std::size_t>> powers_into_D(
        SweepContext const& ctx, std::vector<char> const& allowed) {
      std::vector<std::pair<std::size_t, std::size_t>> out;  // (d, b)
      std::vector<char>                                seen(ctx.D().size(), 0);
      for (std::size_t b = 0; b < ctx.B().size(); ++b) {
        if (!allowed[b]) {
          continue;
        }
        auto d = ctx.pre_B(ctx.pow_B(b));
        if (d != none && !seen[d]) {
          seen[d] = 1;
          out.emplace_back(static_cast<std::size_t>(d), b);
        }
      }
      return out;
    }

    // Sweep  [a, iota_A(iota_B^-1(b^q))] == e  for a^q in A_2 iota_A(D) and b
    // drawn from `allowed`; witness named (a, <b_name>).
    inline ConditionReport bracket_sweep(AmalgamInstance const& inst,
                                         ConditionId            id,
                                         Subgroup const&        b_domain,
                                         bool                   complement,
                                         std::string const&     b_name) {
      ConditionReport report;
      report.id = id;
      SweepContext ctx(inst);
      report.notes.push_back(q_range_note(ctx));
      auto const a2d = ctx.A().membership(join(derived_subgroup(inst.A), inst.iota_A.image()));
      std::vector<char> allowed = ctx.B().membership(b_domain);
      if (complement) {
        for (auto& c : allowed) {
          c = !c;
        }
      }
      for (std::size_t q = 1; q <= ctx.q_max(); ++q) {
        ctx.advance_powers(q);
        auto targets = powers_into_D(ctx, allowed);
        if (targets.empty()) {
          continue;
        }
        for (std::size_t a = 0; a < ctx.A().size(); ++a) {
          if (!a2d[ctx.pow_A(a)]) {
            continue;
          }
          for (auto const& [d, b] : targets) {
            std::size_t value = ctx.bracket_A(a, d);
            if (value != ctx.A().identity()) {
              report.holds   = false;
              report.witness = Witness{
                  Int(q), {{"a", ctx.A()[a]}, {b_name, ctx.B()[b]}, {"value", ctx.A()[value]}},
                  std::nullopt};
              return report;
            }
          }
        }
      }
      return report;
    }

    inline void require_cocentral(AmalgamInstance const& inst, std::string const& what) {
      if (!is_cocentral(inst.iota_B.image())) {
        throw PreconditionError(what + " needs D co-central in B");
      }
      if (!inst.is_finite()) {
        throw InfiniteGroupError(what + " sweep needs finite A, B and D");
      }
    }
  }  // namespace detail

  // (*): for a^q in A_2 D and b in B \ D with b^q in D, [a, b^q] = e.
  inline ConditionReport check_star(AmalgamInstance const& inst) {
    detail::require_cocentral(inst, "star");
    return detail::bracket_sweep(inst, ConditionId::star, inst.iota_B.image(), true, "b");
  }

  // (**): for a^q in A_2 D and z in Z(B) with z^q in D, [a, z^q] = e.
  inline ConditionReport check_star_star(AmalgamInstance const& inst) {
    detail::require_cocentral(inst, "star_star");
    return detail::bracket_sweep(inst, ConditionId::star_star, center(inst.B), false, "z");
  }

  ////////////////////////////////////////////////////////////////////////
  // D central in B: B_2 ∩ D <= Z(A), and [a, b^q b'] = e for a^q in A_2 D,
  // b^q b' in D.  ("b^q b'" is read as lying in D, as in every parallel
  // condition.)
  ////////////////////////////////////////////////////////////////////////

  inline ConditionReport check_satz2_central(AmalgamInstance const& inst) {
    if (!is_central_subgroup(inst.iota_B.image())) {
      throw PreconditionError("satz2_central needs D central in B");
    }
    if (!inst.is_finite()) {
      throw InfiniteGroupError("satz2_central sweep needs finite A, B and D");
    }
    ConditionReport report;
    report.id = ConditionId::satz2_central;
    if (auto d = detail::condition1_side(inst.B, inst.iota_B, inst.A, inst.iota_A)) {
      report.holds   = false;
      report.witness = Witness{std::nullopt, {{"d", *d}, {"in_A", inst.iota_A(*d)}}, std::nullopt};
      report.notes.push_back("iota_B(d) lies in B_2 but iota_A(d) is not central in A");
      return report;
    }
    detail::SweepContext ctx(inst);
    report.notes.push_back(detail::q_range_note(ctx));
    auto const a2d = ctx.A().membership(join(derived_subgroup(inst.A), inst.iota_A.image()));
    auto const b2  = ctx.B().indices(derived_subgroup(inst.B));
    for (std::size_t q = 1; q <= ctx.q_max(); ++q) {
      ctx.advance_powers(q);
      // first (b, b') per d = iota_B^-1(b^q b')
      std::vector<detail::Lift> targets;
      std::vector<char>         seen(ctx.D().size(), 0);
      for (auto const& l : detail::lifts_B(ctx, b2)) {
        if (!seen[l.d]) {
          seen[l.d] = 1;
          targets.push_back(l);
        }
      }
      for (std::size_t a = 0; a < ctx.A().size(); ++a) {
        if (!a2d[ctx.pow_A(a)]) {
          continue;
        }
        for (auto const& t : targets) {
          std::size_t value = ctx.bracket_A(a, t.d);
          if (value != ctx.A().identity()) {
            report.holds   = false;
            report.witness = Witness{Int(q),
                                     {{"a", ctx.A()[a]},
                                      {"b", ctx.B()[t.x]},
                                      {"b'", ctx.B()[t.x_prime]},
                                      {"value", ctx.A()[value]}},
                                     std::nullopt};
            return report;
          }
        }
      }
    }
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // Dispatcher
  ////////////////////////////////////////////////////////////////////////

  // Condition (1) is necessary for every weak amalgam, so it is checked
  // first; then the strongest applicable criterion decides:
  //   both torsion-free      -> (1) alone
  //   D central in B (or A)  -> satz2_central
  //   D co-central in B (A)  -> (**)
  //   D normal in A or B     -> korollar3
  //   A, B finite            -> (1) and (2)
  inline ConditionReport decide_embeddability(AmalgamInstance const& inst) {
    ConditionReport report;
    report.id = ConditionId::decide;

    auto finish = [&](ConditionReport part, std::string criterion) {
      report.holds     = part.holds;
      report.criterion = std::move(criterion);
      report.witness   = part.witness;
      report.parts.push_back(std::move(part));
      return report;
    };

    ConditionReport c1 = check_condition1(inst);
    if (!c1.holds) {
      return finish(std::move(c1), "condition1");
    }
    if (is_torsion_free(inst.A) == Tristate::yes && is_torsion_free(inst.B) == Tristate::yes) {
      report.notes.push_back("A and B torsion-free: condition (2) is superfluous");
      return finish(std::move(c1), "torsion_free");
    }
    report.parts.push_back(c1);

    bool const finite = inst.is_finite();
    auto       branch = [&](bool swap) { return swap ? inst.swapped() : inst; };
    for (bool swap : {false, true}) {
      AmalgamInstance i = branch(swap);
      if (finite && is_central_subgroup(i.iota_B.image())) {
        if (swap) {
          report.notes.push_back("roles of A and B exchanged");
        }
        return finish(check_satz2_central(i), swap ? "central_in_A" : "central");
      }
    }
    for (bool swap : {false, true}) {
      AmalgamInstance i = branch(swap);
      if (finite && is_cocentral(i.iota_B.image())) {
        if (swap) {
          report.notes.push_back("roles of A and B exchanged");
        }
        return finish(check_star_star(i), swap ? "cocentral_in_A" : "cocentral");
      }
    }
    if (finite && d_normal_somewhere(inst)) {
      return finish(check_korollar3(inst), "normal");
    }
    if (finite) {
      ConditionReport c2 = check_condition2(inst);
      return finish(std::move(c2), "hauptsatz");
    }
    throw Undecidable("undecidable by implemented criteria: infinite instance that is neither "
                      "torsion-free nor covered by a finite sweep");
  }

  ////////////////////////////////////////////////////////////////////////
  // Witness re-evaluation
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline bool has(Witness const& w, std::string const& name) {
      for (auto const& [n, e] : w.elements) {
        if (n == name) {
          return true;
        }
      }
      return false;
    }

    // a^q in A_2 iota_A(D), b outside iota_B(D) (or b central), b^q in
    // iota_B(D), and [a, iota_A(iota_B^-1(b^q))] != e.
    inline bool bracket_violation(AmalgamInstance const& inst,
                                  Int const&             q,
                                  Element const&         a,
                                  Element const&         b,
                                  bool                   b_central) {
      Subgroup const a2d = join(derived_subgroup(inst.A), inst.iota_A.image());
      Subgroup const d_B = inst.iota_B.image();
      if (!a2d.contains(power(a, q))) {
        return false;
      }
      if (b_central ? !center(inst.B).contains(b) : d_B.contains(b)) {
        return false;
      }
      auto d = inst.iota_B.preimage(power(b, q));
      return d && !commutator(a, inst.iota_A(*d)).is_identity();
    }

    inline bool condition1_violation(AmalgamInstance const& inst, Element const& d) {
      Subgroup const a2 = derived_subgroup(inst.A);
      Subgroup const b2 = derived_subgroup(inst.B);
      return (a2.contains(inst.iota_A(d)) && !center(inst.B).contains(inst.iota_B(d)))
             || (b2.contains(inst.iota_B(d)) && !center(inst.A).contains(inst.iota_A(d)));
    }

    inline bool tuple_violation(AmalgamInstance const& inst, ConditionTwoTuple const& t) {
      Subgroup const a2 = derived_subgroup(inst.A);
      Subgroup const b2 = derived_subgroup(inst.B);
      Element        lhs(inst.A), rhs(inst.B);
      for (auto const& e : t.entries) {
        if (e.q <= 0 || !a2.contains(e.x_prime) || !b2.contains(e.y_prime)) {
          return false;
        }
        auto da = inst.iota_A.preimage(power(e.x, e.q) * e.x_prime);
        auto db = inst.iota_B.preimage(power(e.y, e.q) * e.y_prime);
        if (!da || !db) {
          return false;
        }
        lhs = lhs * commutator(e.x, inst.iota_A(*db));
        rhs = rhs * commutator(inst.iota_B(*da), e.y);
      }
      return (lhs == inst.iota_A(t.d)) != (rhs == inst.iota_B(t.d));
    }

    inline bool korollar3_b_violation(AmalgamInstance const& inst, Witness const& w) {
      Element const& a  = w.at("a");
      Element const& ap = w.at("a'");
      Element const& b  = w.at("b");
      Element const& bp = w.at("b'");
      if (!w.q || !derived_subgroup(inst.A).contains(ap) || !derived_subgroup(inst.B).contains(bp)) {
        return false;
      }
      auto da = inst.iota_A.preimage(power(a, *w.q) * ap);
      auto db = inst.iota_B.preimage(power(b, *w.q) * bp);
      if (!da || !db) {
        return false;
      }
      auto in_A = inst.iota_A.preimage(commutator(a, inst.iota_A(*db)));
      auto in_B = inst.iota_B.preimage(commutator(inst.iota_B(*da), b));
      return !in_A || !in_B || *in_A != *in_B;
    }

    inline bool satz2_violation(AmalgamInstance const& inst, Witness const& w) {
      if (!w.q) {
        Element const& d = w.at("d");
        return derived_subgroup(inst.B).contains(inst.iota_B(d))
               && !center(inst.A).contains(inst.iota_A(d));
      }
      Element const& a  = w.at("a");
      Element const& bp = w.at("b'");
      if (!join(derived_subgroup(inst.A), inst.iota_A.image()).contains(power(a, *w.q))
          || !derived_subgroup(inst.B).contains(bp)) {
        return false;
      }
      auto d = inst.iota_B.preimage(power(w.at("b"), *w.q) * bp);
      return d && !commutator(a, inst.iota_A(*d)).is_identity();
    }
  }  // namespace detail

  // Independent recomputation of a failed report's witness with element
  // arithmetic and subgroup membership only.
  inline bool witness_is_violation(AmalgamInstance const& inst, ConditionReport const& report) {
    if (report.holds) {
      return false;
    }
    if (!report.parts.empty()) {
      for (auto const& p : report.parts) {
        if (!p.holds) {
          return witness_is_violation(report.id == ConditionId::decide && p.id != ConditionId::condition1
                                              && report.criterion.find("_in_A") != std::string::npos
                                          ? inst.swapped()
                                          : inst,
                                      p);
        }
      }
      return false;
    }
    if (!report.witness) {
      return false;
    }
    Witness const& w = *report.witness;
    switch (report.id) {
      case ConditionId::condition1: return detail::condition1_violation(inst, w.at("d"));
      case ConditionId::condition2: return w.tuple && detail::tuple_violation(inst, *w.tuple);
      case ConditionId::korollar3_b: return detail::korollar3_b_violation(inst, w);
      case ConditionId::star:
        return w.q && detail::bracket_violation(inst, *w.q, w.at("a"), w.at("b"), false);
      case ConditionId::star_star:
        return w.q && detail::bracket_violation(inst, *w.q, w.at("a"), w.at("z"), true);
      case ConditionId::satz2_central: return detail::satz2_violation(inst, w);
      default: return false;
    }
  }

}  // namespace nilamalg

#endif  // NILAMALG_CONDITIONS_HPP_
