#ifndef STALLINGS_WORD_HPP_
#define STALLINGS_WORD_HPP_

// Words in a free group of rank r <= 26.
//
// Text syntax: 'a'..'z' are the generators x_1..x_26, 'A'..'Z' their
// inverses, whitespace is ignored and "1" alone denotes the empty word.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace stallings {

  //! A generator or its inverse.  Encoded as 2*generator + (inverse ? 1 : 0),
  //! so that the inverse letter is obtained by flipping the low bit; this is
  //! the same label numbering the transition tables of LabeledCore use.
  class Letter {
   public:
    constexpr Letter() = default;
    constexpr Letter(std::size_t generator, bool inverse)
        : _code(2 * generator + (inverse ? 1 : 0)) {}

    static constexpr Letter from_label(std::size_t label) {
      Letter l;
      l._code = label;
      return l;
    }

    constexpr std::size_t generator() const noexcept {
      return _code >> 1;
    }
    constexpr bool is_inverse() const noexcept {
      return _code & 1;
    }
    constexpr std::size_t label() const noexcept {
      return _code;
    }
    constexpr Letter inverse() const noexcept {
      return from_label(_code ^ 1);
    }
    char to_char() const {
      char c = static_cast<char>('a' + generator());
      return is_inverse() ? static_cast<char>(std::toupper(c)) : c;
    }

    friend constexpr bool operator==(Letter, Letter) = default;
    friend constexpr auto operator<=>(Letter, Letter) = default;

   private:
    std::size_t _code = 0;
  };

  using Word = std::vector<Letter>;

  inline Word inverse(Word const& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      out.push_back(it->inverse());
    }
    return out;
  }

  //! Free reduction.
  inline Word reduce(Word const& w) {
    Word out;
    out.reserve(w.size());
    for (Letter l : w) {
      if (!out.empty() && out.back() == l.inverse()) {
        out.pop_back();
      } else {
        out.push_back(l);
      }
    }
    return out;
  }

  inline bool is_reduced(Word const& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i + 1] == w[i].inverse()) {
        return false;
      }
    }
    return true;
  }

  //! Reduced product.
  inline Word operator*(Word const& x, Word const& y) {
    Word w = x;
    w.insert(w.end(), y.begin(), y.end());
    return reduce(w);
  }

  //! Parses \p text; throws ParseError naming the offending character.
  inline Word parse_word(std::string_view text) {
    Word out;
    bool saw_one = false;
    for (char c : text) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        continue;
      }
      if (c >= 'a' && c <= 'z') {
        out.emplace_back(static_cast<std::size_t>(c - 'a'), false);
      } else if (c >= 'A' && c <= 'Z') {
        out.emplace_back(static_cast<std::size_t>(c - 'A'), true);
      } else if (c == '1' && !saw_one) {
        saw_one = true;
      } else {
        throw ParseError("malformed word '" + std::string(text)
                         + "': unexpected character '" + std::string(1, c)
                         + "'");
      }
    }
    if (saw_one && !out.empty()) {
      throw ParseError("malformed word '" + std::string(text)
                       + "': '1' must stand alone");
    }
    return out;
  }

  inline std::string to_string(Word const& w) {
    if (w.empty()) {
      return "1";
    }
    std::string s;
    for (Letter l : w) {
      s += l.to_char();
    }
    return s;
  }

  //! Throws DomainError if \p w uses a generator index >= \p r.
  inline void check_alphabet(Word const& w, std::size_t r) {
    for (Letter l : w) {
      if (l.generator() >= r) {
        throw DomainError("generator '" + std::string(1, l.to_char())
                          + "' out of range for rank " + std::to_string(r));
      }
    }
  }

}  // namespace stallings

#endif  // STALLINGS_WORD_HPP_
