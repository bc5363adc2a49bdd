#include "faircoin/reality.hpp"

#include "faircoin/caps.hpp"

#include <algorithm>

namespace faircoin {

namespace {

std::string move_label(Move m) { return m.value() > 0 ? "+1" : "-1"; }

template <class Num>
class FixedReality final : public RealitySource<Num> {
 public:
  explicit FixedReality(Situation path) : path_(std::move(path)) {}
  Move next_move(const Situation& history, const Num&, const Strategy<Num>&,
                 std::size_t) override {
    if (history.length() >= path_.length()) {
      throw std::out_of_range("fixed path of length " + std::to_string(path_.length()) +
                              " exhausted at round " + std::to_string(history.length() + 1));
    }
    return path_[history.length()];
  }
  RealityPtr<Num> clone() const override { return std::make_unique<FixedReality>(*this); }
  std::string describe() const override { return "fixed:" + path_.str(); }

 private:
  Situation path_;
};

template <class Num>
class IidReality final : public RealitySource<Num> {
 public:
  explicit IidReality(std::uint64_t seed) : seed_(seed), gen_(seed) {}
  Move next_move(const Situation&, const Num&, const Strategy<Num>&, std::size_t) override {
    if (bits_left_ == 0) {
      word_ = gen_();
      bits_left_ = 64;
    }
    const bool up = (word_ >> 63) & 1u;
    word_ <<= 1;
    --bits_left_;
    return up ? Move::up() : Move::down();
  }
  RealityPtr<Num> clone() const override { return std::make_unique<IidReality>(*this); }
  std::string describe() const override { return "iid:seed=" + std::to_string(seed_); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
  std::uint64_t word_ = 0;
  int bits_left_ = 0;
};

template <class Num>
class AlternatingReality final : public RealitySource<Num> {
 public:
  Move next_move(const Situation& history, const Num&, const Strategy<Num>&,
                 std::size_t) override {
    return history.length() % 2 == 0 ? Move::up() : Move::down();
  }
  RealityPtr<Num> clone() const override { return std::make_unique<AlternatingReality>(*this); }
  std::string describe() const override { return "alt"; }
};

template <class Num>
class GreedyReality final : public RealitySource<Num> {
 public:
  explicit GreedyReality(Move tie) : tie_(tie) {}
  Move next_move(const Situation&, const Num& stake, const Strategy<Num>&, std::size_t) override {
    if (stake > 0) return Move::down();
    if (stake < 0) return Move::up();
    return tie_;
  }
  RealityPtr<Num> clone() const override { return std::make_unique<GreedyReality>(*this); }
  std::string describe() const override { return "greedy:tie=" + move_label(tie_); }

 private:
  Move tie_;
};

template <class Num>
Num search(const Strategy<Num>& node, std::size_t depth, Move* best_first, Move tie) {
  if (depth == 0 || node.stopped()) return node.capital();
  std::optional<Num> best;
  for (Move x : {tie, -tie}) {
    auto child = node.clone();
    child->observe(x);
    Num v = search(*child, depth - 1, nullptr, tie);
    if (!best || v < *best) {
      best = std::move(v);
      if (best_first) *best_first = x;
    }
  }
  return *best;
}

template <class Num>
class MinimaxReality final : public RealitySource<Num> {
 public:
  MinimaxReality(std::size_t depth, Move tie) : depth_(depth), tie_(tie) {}
  Move next_move(const Situation&, const Num&, const Strategy<Num>& skeptic,
                 std::size_t rounds_left) override {
    Move best = tie_;
    search(skeptic, std::max<std::size_t>(1, std::min(depth_, rounds_left)), &best, tie_);
    return best;
  }
  RealityPtr<Num> clone() const override { return std::make_unique<MinimaxReality>(*this); }
  std::string describe() const override {
    return "minimax:depth=" + std::to_string(depth_) + ",tie=" + move_label(tie_);
  }

 private:
  std::size_t depth_;
  Move tie_;
};

}  // namespace

std::size_t default_minimax_cap() { return env_cap("FAIRCOIN_MINIMAX_CAP", 22); }

template <class Num>
RealityPtr<Num> fixed_reality(Situation path) {
  return std::make_unique<FixedReality<Num>>(std::move(path));
}

template <class Num>
RealityPtr<Num> iid_reality(std::uint64_t seed) {
  return std::make_unique<IidReality<Num>>(seed);
}

template <class Num>
RealityPtr<Num> alternating_reality() {
  return std::make_unique<AlternatingReality<Num>>();
}

template <class Num>
RealityPtr<Num> greedy_reality(Move tie) {
  return std::make_unique<GreedyReality<Num>>(tie);
}

template <class Num>
RealityPtr<Num> minimax_reality(std::size_t depth, Move tie, std::size_t cap) {
  if (depth == 0) throw std::invalid_argument("minimax depth must be at least 1");
  require_cap(depth, cap, "minimax depth");
  return std::make_unique<MinimaxReality<Num>>(depth, tie);
}

template <class Num>
Num minimax_value(const Strategy<Num>& skeptic, std::size_t depth) {
  return search(skeptic, depth, nullptr, Move::down());
}

#define FAIRCOIN_INSTANTIATE(Num)                                               \
  template RealityPtr<Num> fixed_reality<Num>(Situation);                       \
  template RealityPtr<Num> iid_reality<Num>(std::uint64_t);                     \
  template RealityPtr<Num> alternating_reality<Num>();                          \
  template RealityPtr<Num> greedy_reality<Num>(Move);                           \
  template RealityPtr<Num> minimax_reality<Num>(std::size_t, Move, std::size_t); \
  template Num minimax_value<Num>(const Strategy<Num>&, std::size_t);

FAIRCOIN_INSTANTIATE(Rational)
FAIRCOIN_INSTANTIATE(double)

#undef FAIRCOIN_INSTANTIATE

}  // namespace faircoin
