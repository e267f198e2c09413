#include "obk/words.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace obk {

bool operator==(const CurveRef& a, const CurveRef& b) {
  return a.name == b.name && a.frame == b.frame;
}

bool operator==(const Letter& a, const Letter& b) {
  return a.power == b.power && a.curve == b.curve;
}

TwistWord TwistWord::of(std::vector<Letter> letters) {
  TwistWord w;
  for (auto& l : letters) {
    if (l.power == 0) continue;
    if (!w.letters_.empty() && w.letters_.back().curve == l.curve) {
      w.letters_.back().power += l.power;
      if (w.letters_.back().power == 0) w.letters_.pop_back();
    } else {
      w.letters_.push_back(std::move(l));
    }
  }
  return w;
}

TwistWord TwistWord::inverse() const {
  std::vector<Letter> rev;
  rev.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    rev.push_back(Letter{it->curve, -it->power});
  return of(std::move(rev));
}

TwistWord TwistWord::concat(const TwistWord& rhs) const {
  std::vector<Letter> all = letters_;
  all.insert(all.end(), rhs.letters_.begin(), rhs.letters_.end());
  return of(std::move(all));
}

TwistWord TwistWord::rotated(std::size_t by) const {
  if (letters_.empty()) return *this;
  by %= letters_.size();
  std::vector<Letter> rot(letters_.begin() + by, letters_.end());
  rot.insert(rot.end(), letters_.begin(), letters_.begin() + by);
  return of(std::move(rot));
}

TwistWord TwistWord::pow(long long e) const {
  TwistWord base = e < 0 ? inverse() : *this;
  long long n = e < 0 ? -e : e;
  TwistWord out;
  for (long long i = 0; i < n; ++i) out = out.concat(base);
  return out;
}

TwistWord expand_images(const TwistWord& w) {
  std::vector<Letter> out;
  for (const auto& l : w.letters()) {
    if (!l.curve.is_image()) {
      out.push_back(l);
      continue;
    }
    TwistWord frame = expand_images(TwistWord::of(l.curve.frame));
    TwistWord mid = TwistWord::of({Letter{CurveRef::plain(l.curve.name), l.power}});
    TwistWord conj = frame.concat(mid).concat(frame.inverse());
    for (const auto& cl : conj.letters()) out.push_back(cl);
  }
  return TwistWord::of(std::move(out));
}

namespace {

void collect_names(const Letter& l, std::vector<std::string>& out) {
  out.push_back(l.curve.name);
  for (const auto& fl : l.curve.frame) collect_names(fl, out);
}

}  // namespace

std::vector<std::string> mentioned_names(const TwistWord& w) {
  std::vector<std::string> out;
  for (const auto& l : w.letters()) collect_names(l, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct Cursor {
  const std::string& s;
  std::size_t i = 0;
  bool done() const { return i >= s.size(); }
  char peek() const { return s[i]; }
};

std::string take_name(Cursor& c) {
  std::size_t start = c.i;
  while (!c.done() && name_char(c.peek())) ++c.i;
  if (c.i == start) throw ParseError("expected curve name at '" + c.s.substr(start) + "'");
  return c.s.substr(start, c.i - start);
}

long long take_power(Cursor& c) {
  if (c.done() || c.peek() != '^') return 1;
  ++c.i;
  std::size_t start = c.i;
  if (!c.done() && (c.peek() == '-' || c.peek() == '+')) ++c.i;
  while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) ++c.i;
  if (c.i == start || (c.i == start + 1 && !std::isdigit(static_cast<unsigned char>(c.s[start]))))
    throw ParseError("expected integer power in '" + c.s + "'");
  return std::stoll(c.s.substr(start, c.i - start));
}

Letter parse_letter_token(const std::string& tok) {
  Cursor c{tok};
  std::vector<Letter> prefix;  // atoms seen before a '(' become the frame
  while (true) {
    std::string nm = take_name(c);
    long long pw = take_power(c);
    if (!c.done() && c.peek() == '.') {
      prefix.push_back(Letter{CurveRef::plain(nm), pw});
      ++c.i;
      continue;
    }
    if (!c.done() && c.peek() == '(') {
      prefix.push_back(Letter{CurveRef::plain(nm), pw});
      ++c.i;
      std::string base = take_name(c);
      if (c.done() || c.peek() != ')') throw ParseError("expected ')' in '" + tok + "'");
      ++c.i;
      long long outer = take_power(c);
      if (!c.done()) throw ParseError("trailing characters in '" + tok + "'");
      return Letter{CurveRef{base, std::move(prefix)}, outer};
    }
    if (!c.done()) throw ParseError("unexpected character '" + std::string(1, c.peek()) +
                                    "' in '" + tok + "'");
    if (!prefix.empty()) throw ParseError("frame without (base) in '" + tok + "'");
    return Letter{CurveRef::plain(nm), pw};
  }
}

}  // namespace

TwistWord parse_word(const std::string& text) {
  std::vector<Letter> letters;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) letters.push_back(parse_letter_token(tok));
  return TwistWord::of(std::move(letters));
}

std::string format_letter(const Letter& l) {
  std::string s;
  if (l.curve.is_image()) {
    for (std::size_t i = 0; i < l.curve.frame.size(); ++i) {
      if (i) s += ".";
      s += format_letter(l.curve.frame[i]);
    }
    s += "(" + l.curve.name + ")";
  } else {
    s = l.curve.name;
  }
  if (l.power != 1) s += "^" + std::to_string(l.power);
  return s;
}

std::string format_word(const TwistWord& w) {
  std::string s;
  for (std::size_t i = 0; i < w.letters().size(); ++i) {
    if (i) s += " ";
    s += format_letter(w.letters()[i]);
  }
  return s;
}

bool CurveOrder::before(const CurveRef& a, const CurveRef& b) const {
  if (a.is_image() != b.is_image()) return !a.is_image();
  if (!a.is_image()) return rank(a.name) < rank(b.name);
  if (int ra = rank(a.name), rb = rank(b.name); ra != rb) return ra < rb;
  // image curves: compare frames structurally
  const auto& fa = a.frame;
  const auto& fb = b.frame;
  for (std::size_t i = 0; i < std::min(fa.size(), fb.size()); ++i) {
    if (fa[i].curve != fb[i].curve) return before(fa[i].curve, fb[i].curve);
    if (fa[i].power != fb[i].power) return fa[i].power < fb[i].power;
  }
  return fa.size() < fb.size();
}

}  // namespace obk
