#pragma once

// Twist words: finite words in signed, powered Dehn-twist generators.
// A letter twists along either a named curve or the image of a named curve
// under another word (a conjugated twist).

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace obk {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

struct Letter;

// A curve reference. `frame` empty means the plain curve `name`;
// otherwise the curve is the image of `name` under the twist word `frame`.
struct CurveRef {
  std::string name;
  std::vector<Letter> frame;

  bool is_image() const { return !frame.empty(); }
  static CurveRef plain(std::string n) { return CurveRef{std::move(n), {}}; }
};

struct Letter {
  CurveRef curve;
  long long power = 1;
};

bool operator==(const CurveRef& a, const CurveRef& b);
bool operator==(const Letter& a, const Letter& b);
inline bool operator!=(const CurveRef& a, const CurveRef& b) { return !(a == b); }

// Monodromy word. Kept in canonical letter form: adjacent letters on equal
// curves are merged and zero powers dropped (stronger normalization, with
// commutation moves, lives in rewrite.hpp).
class TwistWord {
 public:
  TwistWord() = default;
  static TwistWord of(std::vector<Letter> letters);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }

  TwistWord inverse() const;
  TwistWord concat(const TwistWord& rhs) const;
  TwistWord rotated(std::size_t by) const;  // cyclic rotation by whole letters
  TwistWord pow(long long e) const;

  bool operator==(const TwistWord& rhs) const { return letters_ == rhs.letters_; }
  bool operator!=(const TwistWord& rhs) const { return !(*this == rhs); }

 private:
  std::vector<Letter> letters_;
};

// Replace every image-curve letter f(c)^p by the plain word f c^p f^{-1},
// recursively, so only named curves remain.
TwistWord expand_images(const TwistWord& w);

// Every curve name mentioned anywhere in the word, frames included.
std::vector<std::string> mentioned_names(const TwistWord& w);

// Textual syntax: whitespace-separated letters.
//   letter  := atom | frame "(" name ")" [^power]
//   atom    := name [^power]
//   frame   := atom ("." atom)*
// Examples: "b1 a1^2 c1^-1", "b2(a2)", "b2.a1^-1(a2)^3".
TwistWord parse_word(const std::string& text);
std::string format_word(const TwistWord& w);
std::string format_letter(const Letter& l);

// Deterministic total order on curve references used by normalization.
// Plain curves sort by `rank(name)` (registration order); image curves come
// after all plain curves, ordered structurally.
struct CurveOrder {
  std::function<int(const std::string&)> rank;
  bool before(const CurveRef& a, const CurveRef& b) const;
};

}  // namespace obk
