#include "faircoin/game.hpp"

namespace faircoin {

Move Move::from_int(int value) {
  if (value != 1 && value != -1) {
    throw std::invalid_argument("a move must be -1 or +1, got " + std::to_string(value));
  }
  return Move(value);
}

Situation::Situation(std::vector<Move> moves) : moves_(std::move(moves)) {
  for (Move x : moves_) sum_ += x.value();
}

Situation Situation::parse(std::string_view text) {
  Situation t;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == ',') {
      ++i;
      continue;
    }
    if (c != '+' && c != '-') {
      throw std::invalid_argument("bad move character '" + std::string(1, c) + "' at position " +
                                  std::to_string(i));
    }
    t.push_back(c == '+' ? Move::up() : Move::down());
    ++i;
    if (i < text.size() && text[i] == '1') ++i;
  }
  return t;
}

Situation Situation::operator-() const {
  Situation t;
  t.moves_.reserve(moves_.size());
  for (Move x : moves_) t.push_back(-x);
  return t;
}

Situation Situation::prefix(std::size_t n) const {
  if (n > moves_.size()) throw std::out_of_range("prefix longer than situation");
  return Situation(std::vector<Move>(moves_.begin(), moves_.begin() + static_cast<long>(n)));
}

bool Situation::starts_with(const Situation& other) const {
  if (other.length() > length()) return false;
  for (std::size_t i = 0; i < other.length(); ++i) {
    if (moves_[i] != other.moves_[i]) return false;
  }
  return true;
}

std::string Situation::str() const {
  std::string out;
  out.reserve(2 * moves_.size());
  for (Move x : moves_) out += x.value() > 0 ? "+1" : "-1";
  return out;
}

ProcessValues process_values(const Situation& t) {
  ProcessValues v;
  v.n = t.length();
  v.s = t.sum();
  v.xbar = v.n == 0 ? Rational(0) : Rational(v.s, static_cast<long>(v.n));
  return v;
}

template <class Num>
Situation GameTrace<Num>::situation() const {
  Situation t;
  for (const auto& r : rounds) t.push_back(r.x);
  return t;
}

template struct GameTrace<Rational>;
template struct GameTrace<double>;

}  // namespace faircoin
