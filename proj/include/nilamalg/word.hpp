#ifndef NILAMALG_WORD_HPP_
#define NILAMALG_WORD_HPP_

// Unreduced words `name^exp*name^exp*...` and their evaluation.
// `e` and `1` denote the empty word.

#include <cctype>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "element.hpp"
#include "errors.hpp"
#include "integer.hpp"
#include "presentation.hpp"

namespace nilamalg {

  struct Letter {
    std::string name;
    Int         exponent;

    bool operator==(Letter const&) const = default;
  };

  class WordSyntaxError : public Error {
   public:
    WordSyntaxError(std::string const& msg, std::size_t column)
        : Error(msg), column_(column) {}

    // 0-based offset into the parsed text
    std::size_t column() const noexcept {
      return column_;
    }

   private:
    std::size_t column_;
  };

  class Word {
   public:
    Word() = default;
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

    std::vector<Letter> const& letters() const noexcept {
      return letters_;
    }
    bool empty() const noexcept {
      return letters_.empty();
    }

    static bool is_name_start(char ch) {
      return std::isalpha(static_cast<unsigned char>(ch)) || ch == '_';
    }
    static bool is_name_char(char ch) {
      return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\'';
    }

    static Word parse(std::string const& text) {
      std::vector<Letter> letters;
      std::size_t         pos  = 0;
      auto                skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
          ++pos;
        }
      };
      skip();
      if (pos == text.size()) {
        throw WordSyntaxError("empty word", pos);
      }
      while (true) {
        skip();
        if (pos < text.size() && text[pos] == '1') {
          ++pos;
        } else if (pos < text.size() && is_name_start(text[pos])) {
          std::size_t start = pos;
          while (pos < text.size() && is_name_char(text[pos])) {
            ++pos;
          }
          std::string name = text.substr(start, pos - start);
          Int         exp  = 1;
          skip();
          if (pos < text.size() && text[pos] == '^') {
            ++pos;
            skip();
            exp = parse_integer(text, pos);
          }
          if (name != "e") {
            letters.push_back({std::move(name), std::move(exp)});
          }
        } else {
          throw WordSyntaxError("expected generator name", pos);
        }
        skip();
        if (pos == text.size()) {
          break;
        }
        if (text[pos] != '*') {
          throw WordSyntaxError("expected '*' between letters", pos);
        }
        ++pos;
      }
      return Word(std::move(letters));
    }

    std::string to_string() const {
      if (letters_.empty()) {
        return "e";
      }
      std::string out;
      for (auto const& l : letters_) {
        if (!out.empty()) {
          out += "*";
        }
        out += l.name;
        if (l.exponent != 1) {
          out += "^" + l.exponent.str();
        }
      }
      return out;
    }

   private:
    static Int parse_integer(std::string const& text, std::size_t& pos) {
      std::size_t start = pos;
      bool        neg   = false;
      if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        neg = text[pos] == '-';
        ++pos;
      }
      std::size_t digits = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      }
      if (digits == pos) {
        throw WordSyntaxError("expected integer exponent", start);
      }
      Int v(text.substr(digits, pos - digits));
      return neg ? Int(-v) : v;
    }

    std::vector<Letter> letters_;
  };

  class UnknownGenerator : public Error {
   public:
    using Error::Error;
  };

  inline Element evaluate(PresentationPtr const& p, Word const& w) {
    Element out(p);
    for (auto const& l : w.letters()) {
      auto where = p->find(l.name);
      if (!where) {
        throw UnknownGenerator("unknown generator '" + l.name + "' in group " + p->name());
      }
      Element g = where->first ? Element::central_generator(p, where->second)
                               : Element::base_generator(p, where->second);
      out = out * power(g, l.exponent);
    }
    return out;
  }

  inline Element evaluate(PresentationPtr const& p, std::string const& text) {
    return evaluate(p, Word::parse(text));
  }

  // The normal form of u written as a word, e.g. "x^2*y*z^3" or "e".
  inline Word to_word(Element const& u) {
    Presentation const& p = u.presentation();
    std::vector<Letter> letters;
    for (std::size_t i = 0; i < p.number_of_base(); ++i) {
      if (u.base_exponents()[i] != 0) {
        letters.push_back({p.base_generators()[i].name, u.base_exponents()[i]});
      }
    }
    for (std::size_t j = 0; j < p.number_of_central(); ++j) {
      if (u.central_exponents()[j] != 0) {
        letters.push_back({p.central_generators()[j].name, u.central_exponents()[j]});
      }
    }
    return Word(std::move(letters));
  }

  inline std::string to_string(Element const& u) {
    return to_word(u).to_string();
  }

  // Exponent vector of a word that may only mention central generators of
  // the presentation under construction.
  inline CentralVector central_vector(PresentationBuilder const& b, Word const& w) {
    CentralVector v(b.central_generators().size());
    for (auto const& l : w.letters()) {
      bool found = false;
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (b.central_generators()[j].name == l.name) {
          v[j] += l.exponent;
          found = true;
        }
      }
      if (!found) {
        for (auto const& g : b.base_generators()) {
          if (g.name == l.name) {
            throw MalformedRelation("relation value " + w.to_string()
                                    + " mentions the non-central generator " + l.name);
          }
        }
        throw UnknownGenerator("unknown generator '" + l.name + "'");
      }
    }
    return v;
  }

}  // namespace nilamalg

#endif  // NILAMALG_WORD_HPP_
