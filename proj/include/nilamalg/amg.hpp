#ifndef NILAMALG_AMG_HPP_
#define NILAMALG_AMG_HPP_

// Reader and writer for .amg instance files.
//
//   # comment
//   group H
//     gen x 4            base generator, order (0 or inf: infinite)
//     gen y 4
//     cgen z 4           central generator
//     comm y x = z       [y, x] = z, value a word in central generators
//     pow x = z          x^4 = z
//   end
//   group C = catalog cyclic 2
//   embed iA H -> A      one line per generator of H
//     x -> x
//     ...
//   end
//   instance
//     A = A
//     B = B
//     D = H
//     iota_A = iA
//     iota_B = iB
//   end
//
// Words are `name^exp*name^exp`, with `e` for the identity.

#include <cctype>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "catalog.hpp"
#include "consistency.hpp"
#include "embedding.hpp"
#include "errors.hpp"
#include "instance.hpp"
#include "presentation.hpp"
#include "word.hpp"

namespace nilamalg {

  class AmgError : public Error {
   public:
    enum class Kind { syntax, malformed_relation, inconsistent, not_homomorphic, invalid };

    AmgError(Kind kind, std::string const& source, std::size_t line, std::size_t column,
             std::string const& msg)
        : Error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": "
                + kind_name(kind) + ": " + msg),
          kind_(kind),
          line_(line),
          column_(column) {}

    Kind kind() const noexcept {
      return kind_;
    }
    std::size_t line() const noexcept {
      return line_;
    }
    std::size_t column() const noexcept {
      return column_;
    }

    static std::string kind_name(Kind k) {
      switch (k) {
        case Kind::syntax: return "syntax error";
        case Kind::malformed_relation: return "malformed relation";
        case Kind::inconsistent: return "inconsistent presentation";
        case Kind::not_homomorphic: return "not a homomorphism";
        default: return "invalid instance";
      }
    }

   private:
    Kind        kind_;
    std::size_t line_;
    std::size_t column_;
  };

  struct AmgFile {
    std::map<std::string, PresentationPtr> groups;
    std::map<std::string, Embedding>       embeddings;
    std::optional<AmalgamInstance>         instance;
  };

  namespace detail {

    struct Token {
      std::string text;
      std::size_t column;  // 1-based
    };

    inline std::vector<Token> tokenize(std::string const& line) {
      std::vector<Token> out;
      std::size_t        i = 0;
      while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
          ++i;
          continue;
        }
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
          ++i;
        }
        out.push_back({line.substr(start, i - start), start + 1});
      }
      return out;
    }

    class AmgParser {
     public:
      AmgParser(std::string const& text, std::string source) : source_(std::move(source)) {
        std::istringstream in(text);
        std::string        line;
        while (std::getline(in, line)) {
          if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
          }
          lines_.push_back(line);
        }
      }

      AmgFile parse() {
        bool any = false;
        while (next()) {
          any              = true;
          auto const& head = toks_[0].text;
          if (head == "group") {
            parse_group();
          } else if (head == "embed") {
            parse_embed();
          } else if (head == "instance") {
            parse_instance_block();
          } else {
            fail(AmgError::Kind::syntax, toks_[0],
                 "expected 'group', 'embed' or 'instance', found '" + head + "'");
          }
        }
        if (!any) {
          throw AmgError(AmgError::Kind::syntax, source_, lines_.size() + 1, 1, "empty file");
        }
        return std::move(file_);
      }

     private:
      // Advance to the next non-blank line; false at end of input.
      bool next() {
        while (line_no_ < lines_.size()) {
          toks_ = tokenize(lines_[line_no_++]);
          if (!toks_.empty()) {
            return true;
          }
        }
        return false;
      }

      [[noreturn]] void fail(AmgError::Kind kind, Token const& at, std::string const& msg) const {
        throw AmgError(kind, source_, line_no_, at.column, msg);
      }
      [[noreturn]] void fail_line(AmgError::Kind kind, std::string const& msg) const {
        throw AmgError(kind, source_, line_no_, 1, msg);
      }

      void expect_count(std::size_t n, std::string const& form) const {
        if (toks_.size() != n) {
          Token const& at = toks_.size() > n ? toks_[n] : toks_.back();
          fail(AmgError::Kind::syntax, at, "expected '" + form + "'");
        }
      }

      void expect_token(std::size_t k, std::string const& want) const {
        if (toks_.size() <= k || toks_[k].text != want) {
          fail(AmgError::Kind::syntax, toks_.size() > k ? toks_[k] : toks_.back(),
               "expected '" + want + "'");
        }
      }

      static bool is_name(std::string const& s) {
        if (s.empty() || !Word::is_name_start(s[0])) {
          return false;
        }
        for (char ch : s) {
          if (!Word::is_name_char(ch)) {
            return false;
          }
        }
        return s != "e";
      }

      std::string name_at(std::size_t k) const {
        if (!is_name(toks_[k].text)) {
          fail(AmgError::Kind::syntax, toks_[k], "invalid name '" + toks_[k].text + "'");
        }
        return toks_[k].text;
      }

      Int integer_at(std::size_t k) const {
        std::string const& s = toks_[k].text;
        if (s == "inf") {
          return 0;
        }
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size() || s.find_first_not_of("0123456789", i) != std::string::npos) {
          fail(AmgError::Kind::syntax, toks_[k], "expected an integer, found '" + s + "'");
        }
        return Int(s[0] == '+' ? s.substr(1) : s);
      }

      // Tokens k.. joined back into one word, parsed.
      Word word_from(std::size_t k) const {
        if (k >= toks_.size()) {
          fail(AmgError::Kind::syntax, toks_.back(), "expected a word");
        }
        std::string const& line  = lines_[line_no_ - 1];
        std::size_t        start = toks_[k].column - 1;
        std::string        text  = line.substr(start);
        try {
          return Word::parse(text);
        } catch (WordSyntaxError const& e) {
          throw AmgError(AmgError::Kind::syntax, source_, line_no_, start + e.column() + 1,
                         e.what());
        }
      }

      PresentationPtr const& group_named(Token const& t) const {
        auto it = file_.groups.find(t.text);
        if (it == file_.groups.end()) {
          fail(AmgError::Kind::invalid, t, "unknown group '" + t.text + "'");
        }
        return it->second;
      }

      void define_group(Token const& at, std::string const& name, PresentationPtr p) {
        if (!file_.groups.emplace(name, p).second) {
          fail(AmgError::Kind::invalid, at, "group '" + name + "' defined twice");
        }
        ConsistencyReport r = check_consistency(p);
        if (!r.consistent) {
          fail(AmgError::Kind::inconsistent, at, "group '" + name + "': " + r.detail);
        }
      }

      void parse_group() {
        Token const head = toks_.size() > 1 ? toks_[1] : toks_[0];
        if (toks_.size() < 2) {
          fail(AmgError::Kind::syntax, toks_[0], "expected 'group NAME'");
        }
        std::string const name = name_at(1);
        if (toks_.size() > 2) {
          parse_catalog_group(head, name);
          return;
        }
        std::size_t const   start = line_no_;
        PresentationBuilder b(name);
        std::vector<std::pair<std::size_t, std::vector<Token>>> relations;
        while (true) {
          if (!next()) {
            throw AmgError(AmgError::Kind::syntax, source_, start, 1,
                           "group '" + name + "' has no 'end'");
          }
          auto const& kw = toks_[0].text;
          if (kw == "end") {
            expect_count(1, "end");
            break;
          }
          if (kw == "gen" || kw == "cgen") {
            expect_count(3, kw + " NAME ORDER");
            std::string g = name_at(1);
            Int         n = integer_at(2);
            try {
              if (kw == "gen") {
                b.base(g, n);
              } else {
                b.central(g, n);
              }
            } catch (InvalidArgument const& e) {
              fail(AmgError::Kind::invalid, toks_[1], e.what());
            }
          } else if (kw == "comm" || kw == "pow") {
            relations.emplace_back(line_no_, toks_);
          } else {
            fail(AmgError::Kind::syntax, toks_[0],
                 "expected 'gen', 'cgen', 'comm', 'pow' or 'end', found '" + kw + "'");
          }
        }
        std::size_t const end_line = line_no_;
        // Relations may mention generators declared later in the block.
        for (auto const& [ln, toks] : relations) {
          line_no_ = ln;
          toks_    = toks;
          add_relation(b);
        }
        line_no_ = end_line;
        PresentationPtr p;
        try {
          p = b.build();
        } catch (InvalidArgument const& e) {
          fail(AmgError::Kind::invalid, head, e.what());
        }
        define_group(head, name, p);
      }

      std::size_t base_index(PresentationBuilder const& b, Token const& t) const {
        auto const& gens = b.base_generators();
        for (std::size_t i = 0; i < gens.size(); ++i) {
          if (gens[i].name == t.text) {
            return i;
          }
        }
        for (auto const& g : b.central_generators()) {
          if (g.name == t.text) {
            fail(AmgError::Kind::malformed_relation, t,
                 "relations are stated for base generators; '" + t.text + "' is central");
          }
        }
        fail(AmgError::Kind::invalid, t, "unknown generator '" + t.text + "'");
      }

      void add_relation(PresentationBuilder& b) {
        bool const  is_comm = toks_[0].text == "comm";
        std::size_t eq      = is_comm ? 3 : 2;
        expect_token(eq, "=");
        if (toks_.size() == eq + 1) {
          fail(AmgError::Kind::syntax, toks_[eq], "expected a word after '='");
        }
        Word          w = word_from(eq + 1);
        CentralVector v;
        try {
          v = central_vector(b, w);
        } catch (MalformedRelation const& e) {
          fail(AmgError::Kind::malformed_relation, toks_[eq + 1],
               std::string(e.what()) + " in '" + lines_[line_no_ - 1].substr(toks_[0].column - 1)
                   + "'");
        } catch (UnknownGenerator const& e) {
          fail(AmgError::Kind::invalid, toks_[eq + 1], e.what());
        }
        try {
          if (is_comm) {
            std::size_t j = base_index(b, toks_[1]);
            std::size_t i = base_index(b, toks_[2]);
            if (i == j) {
              fail(AmgError::Kind::malformed_relation, toks_[2],
                   "commutator of a generator with itself");
            }
            b.comm(j, i, v);
          } else {
            std::size_t i = base_index(b, toks_[1]);
            if (b.base_generators()[i].order == 0) {
              fail(AmgError::Kind::malformed_relation, toks_[1],
                   "power relation on infinite-order generator '" + toks_[1].text + "'");
            }
            b.pow(i, v);
          }
        } catch (InvalidArgument const& e) {
          fail(AmgError::Kind::invalid, toks_[1], e.what());
        }
      }

      // group NAME = catalog KEY PARAMS...
      void parse_catalog_group(Token const& head, std::string const& name) {
        expect_token(2, "=");
        expect_token(3, "catalog");
        if (toks_.size() < 5) {
          fail(AmgError::Kind::syntax, toks_.back(), "expected a catalog key");
        }
        std::vector<Int> params;
        for (std::size_t k = 5; k < toks_.size(); ++k) {
          if (toks_[k].text == "+" || toks_[k].text == "-") {
            params.push_back(toks_[k].text == "+" ? 1 : -1);
          } else {
            params.push_back(integer_at(k));
          }
        }
        PresentationPtr p;
        try {
          p = copy_named(construct_named(toks_[4].text, params), name);
        } catch (InvalidArgument const& e) {
          fail(AmgError::Kind::invalid, toks_[4], e.what());
        }
        define_group(head, name, p);
      }

      static PresentationPtr copy_named(PresentationPtr const& p, std::string const& name) {
        PresentationBuilder b(name);
        for (auto const& g : p->base_generators()) {
          b.base(g.name, g.order);
        }
        for (auto const& g : p->central_generators()) {
          b.central(g.name, g.order);
        }
        for (std::size_t j = 0; j < p->number_of_base(); ++j) {
          for (std::size_t i = 0; i < j; ++i) {
            b.comm(j, i, p->comm(j, i));
          }
          if (p->base_order(j) != 0) {
            b.pow(j, p->pow(j));
          }
        }
        return b.build();
      }

      // embed NAME SRC -> TGT
      void parse_embed() {
        if (toks_.size() != 5 || toks_[3].text != "->") {
          fail(AmgError::Kind::syntax, toks_.size() > 1 ? toks_[1] : toks_[0],
               "expected 'embed NAME SOURCE -> TARGET'");
        }
        Token const       head   = toks_[1];
        std::string const name   = name_at(1);
        PresentationPtr   source = group_named(toks_[2]);
        PresentationPtr   target = group_named(toks_[4]);
        std::size_t const start  = line_no_;

        std::size_t const               n = source->number_of_base();
        std::vector<std::optional<Element>> images(n + source->number_of_central());
        while (true) {
          if (!next()) {
            throw AmgError(AmgError::Kind::syntax, source_, start, 1,
                           "embedding '" + name + "' has no 'end'");
          }
          if (toks_[0].text == "end") {
            expect_count(1, "end");
            break;
          }
          expect_token(1, "->");
          auto where = source->find(toks_[0].text);
          if (!where) {
            fail(AmgError::Kind::invalid, toks_[0],
                 "'" + toks_[0].text + "' is not a generator of " + source->name());
          }
          std::size_t slot = where->first ? n + where->second : where->second;
          if (images[slot]) {
            fail(AmgError::Kind::invalid, toks_[0], "image of '" + toks_[0].text + "' given twice");
          }
          if (toks_.size() < 3) {
            fail(AmgError::Kind::syntax, toks_[1], "expected a word after '->'");
          }
          Word w = word_from(2);
          try {
            images[slot] = evaluate(target, w);
          } catch (UnknownGenerator const& e) {
            fail(AmgError::Kind::invalid, toks_[2], e.what());
          }
        }
        std::vector<Element> imgs;
        for (std::size_t k = 0; k < images.size(); ++k) {
          if (!images[k]) {
            std::string g = k < n ? source->base_generators()[k].name
                                  : source->central_generators()[k - n].name;
            fail_line(AmgError::Kind::invalid,
                      "embedding '" + name + "' gives no image for '" + g + "'");
          }
          imgs.push_back(*images[k]);
        }
        try {
          if (!file_.embeddings.emplace(name, Embedding(source, target, std::move(imgs))).second) {
            throw AmgError(AmgError::Kind::invalid, source_, start, head.column,
                           "embedding '" + name + "' defined twice");
          }
        } catch (RelationNotPreserved const& e) {
          throw AmgError(AmgError::Kind::not_homomorphic, source_, start, head.column, e.what());
        }
      }

      void parse_instance_block() {
        expect_count(1, "instance");
        if (file_.instance) {
          fail(AmgError::Kind::invalid, toks_[0], "second instance block");
        }
        std::size_t const            start = line_no_;
        // key -> (value token, line)
        std::map<std::string, std::pair<Token, std::size_t>> fields;
        static std::set<std::string> const keys{"A", "B", "D", "iota_A", "iota_B"};
        while (true) {
          if (!next()) {
            throw AmgError(AmgError::Kind::syntax, source_, start, 1, "instance has no 'end'");
          }
          if (toks_[0].text == "end") {
            expect_count(1, "end");
            break;
          }
          expect_count(3, "KEY = NAME");
          expect_token(1, "=");
          if (keys.count(toks_[0].text) == 0) {
            fail(AmgError::Kind::syntax, toks_[0],
                 "unknown instance key '" + toks_[0].text + "'");
          }
          if (!fields.emplace(toks_[0].text, std::pair{toks_[2], line_no_}).second) {
            fail(AmgError::Kind::invalid, toks_[0], "'" + toks_[0].text + "' given twice");
          }
        }
        for (auto const& k : keys) {
          if (fields.count(k) == 0) {
            throw AmgError(AmgError::Kind::invalid, source_, start, 1,
                           "instance does not set '" + k + "'");
          }
        }
        auto embedding = [&](std::string const& key) -> Embedding const& {
          auto const& [t, line] = fields.at(key);
          auto        it        = file_.embeddings.find(t.text);
          if (it == file_.embeddings.end()) {
            throw AmgError(AmgError::Kind::invalid, source_, line, t.column,
                           "unknown embedding '" + t.text + "'");
          }
          return it->second;
        };
        auto group = [&](std::string const& key) {
          auto const& [t, line] = fields.at(key);
          auto        it        = file_.groups.find(t.text);
          if (it == file_.groups.end()) {
            throw AmgError(AmgError::Kind::invalid, source_, line, t.column,
                           "unknown group '" + t.text + "'");
          }
          return it->second;
        };
        try {
          file_.instance.emplace(group("A"), group("B"), group("D"), embedding("iota_A"),
                                 embedding("iota_B"));
        } catch (AmgError const&) {
          throw;
        } catch (Error const& e) {
          throw AmgError(AmgError::Kind::invalid, source_, start, 1, e.what());
        }
      }

      std::string              source_;
      std::vector<std::string> lines_;
      std::size_t              line_no_ = 0;  // 1-based number of the current line
      std::vector<Token>       toks_;
      AmgFile                  file_;
    };

  }  // namespace detail

  inline AmgFile parse_amg(std::string const& text, std::string const& source = "<input>") {
    return detail::AmgParser(text, source).parse();
  }

  inline AmalgamInstance parse_instance_text(std::string const& text,
                                             std::string const& source = "<input>") {
    AmgFile f = parse_amg(text, source);
    if (!f.instance) {
      throw AmgError(AmgError::Kind::invalid, source, 1, 1, "no instance block");
    }
    return std::move(*f.instance);
  }

  inline AmalgamInstance parse_instance(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw Error("cannot read " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance_text(buf.str(), path);
  }

  namespace detail {
    inline void write_group(std::ostream& out, std::string const& name, Presentation const& p) {
      out << "group " << name << "\n";
      for (auto const& g : p.base_generators()) {
        out << "  gen " << g.name << " " << g.order << "\n";
      }
      for (auto const& g : p.central_generators()) {
        out << "  cgen " << g.name << " " << g.order << "\n";
      }
      auto value = [&](CentralVector const& w) {
        std::vector<Letter> letters;
        for (std::size_t j = 0; j < w.size(); ++j) {
          if (w[j] != 0) {
            letters.push_back({p.central_generators()[j].name, w[j]});
          }
        }
        return Word(std::move(letters)).to_string();
      };
      auto zero = [](CentralVector const& w) {
        for (auto const& x : w) {
          if (x != 0) {
            return false;
          }
        }
        return true;
      };
      for (std::size_t j = 0; j < p.number_of_base(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
          if (!zero(p.comm(j, i))) {
            out << "  comm " << p.base_generators()[j].name << " " << p.base_generators()[i].name
                << " = " << value(p.comm(j, i)) << "\n";
          }
        }
      }
      for (std::size_t i = 0; i < p.number_of_base(); ++i) {
        if (p.base_order(i) != 0 && !zero(p.pow(i))) {
          out << "  pow " << p.base_generators()[i].name << " = " << value(p.pow(i)) << "\n";
        }
      }
      out << "end\n";
    }

    inline void write_embedding(std::ostream& out, std::string const& name, Embedding const& e,
                                std::string const& src, std::string const& tgt) {
      out << "embed " << name << " " << src << " -> " << tgt << "\n";
      auto gens = generators(e.source());
      for (std::size_t k = 0; k < gens.size(); ++k) {
        out << "  " << to_string(gens[k]) << " -> " << to_string(e.images()[k]) << "\n";
      }
      out << "end\n";
    }
  }  // namespace detail

  // An .amg rendering of inst; the groups are named A, B and D (a shared
  // presentation is written once).
  inline std::string write_instance(AmalgamInstance const& inst) {
    std::ostringstream out;
    std::string const  a = "A";
    std::string const  b = inst.B == inst.A ? a : "B";
    std::string const  d = inst.D == inst.A ? a : inst.D == inst.B ? b : "D";
    detail::write_group(out, a, *inst.A);
    if (b != a) {
      detail::write_group(out, b, *inst.B);
    }
    if (d == "D") {
      detail::write_group(out, d, *inst.D);
    }
    detail::write_embedding(out, "iota_A", inst.iota_A, d, a);
    detail::write_embedding(out, "iota_B", inst.iota_B, d, b);
    out << "instance\n  A = " << a << "\n  B = " << b << "\n  D = " << d
        << "\n  iota_A = iota_A\n  iota_B = iota_B\nend\n";
    return out.str();
  }

}  // namespace nilamalg

#endif  // NILAMALG_AMG_HPP_
