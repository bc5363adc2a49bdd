#include "faircoin/strategies.hpp"

#include <stdexcept>

namespace faircoin {

namespace {

template <class Num>
Num ratio(long num, std::size_t den) {
  if constexpr (std::is_same_v<Num, Rational>) {
    return Rational(num, static_cast<long>(den));
  } else {
    return static_cast<double>(num) / static_cast<double>(den);
  }
}

template <class Num>
class ZeroStrategy final : public Strategy<Num> {
 public:
  Num stake() const override { return Num(0); }
  void observe(Move) override {}
  Num capital() const override { return Num(0); }
  bool stopped() const override { return true; }
  std::unique_ptr<Strategy<Num>> clone() const override {
    return std::make_unique<ZeroStrategy>(*this);
  }
  std::string describe() const override { return "zero"; }
};

template <class Num>
class ConstantStrategy final : public Strategy<Num> {
 public:
  explicit ConstantStrategy(const Rational& stake)
      : label_(to_string(stake)), stake_(from_rational<Num>(stake)) {}
  Num stake() const override { return stake_; }
  void observe(Move x) override { capital_ += stake_ * x.value(); }
  Num capital() const override { return capital_; }
  std::unique_ptr<Strategy<Num>> clone() const override {
    return std::make_unique<ConstantStrategy>(*this);
  }
  std::string describe() const override { return "const:M=" + label_; }

 private:
  std::string label_;
  Num stake_;
  Num capital_{};
};

template <class Num>
class MultiplicativeContrarian final : public Strategy<Num> {
 public:
  explicit MultiplicativeContrarian(const Rational& c) : label_(to_string(c)), c_(from_rational<Num>(c)) {}

  Num stake() const override {
    if (n_ == 0) return Num(0);
    return -c_ * ratio<Num>(s_, n_) * (Num(1) + capital_);
  }
  void observe(Move x) override {
    capital_ += stake() * x.value();
    ++n_;
    s_ += x.value();
  }
  Num capital() const override { return capital_; }
  std::unique_ptr<Strategy<Num>> clone() const override {
    return std::make_unique<MultiplicativeContrarian>(*this);
  }
  std::string describe() const override { return "mulc:c=" + label_; }

 private:
  std::string label_;
  Num c_;
  Num capital_{};
  std::size_t n_ = 0;
  long s_ = 0;
};

template <class Num>
class AdditiveContrarian final : public Strategy<Num> {
 public:
  explicit AdditiveContrarian(const Rational& eps)
      : label_(to_string(eps)), eps_(from_rational<Num>(eps)) {}

  Num stake() const override { return -eps_ * s_; }
  void observe(Move x) override {
    capital_ += stake() * x.value();
    s_ += x.value();
  }
  Num capital() const override { return capital_; }
  std::unique_ptr<Strategy<Num>> clone() const override {
    return std::make_unique<AdditiveContrarian>(*this);
  }
  std::string describe() const override { return "addc:eps=" + label_; }

 private:
  std::string label_;
  Num eps_;
  Num capital_{};
  long s_ = 0;
};

template <class Num>
class StoppedAdditive final : public Strategy<Num> {
 public:
  StoppedAdditive(const Rational& eps, long m)
      : label_(to_string(eps)), eps_(from_rational<Num>(eps)), m_(m) {}

  Num stake() const override {
    if (stopped_ || !guard_holds()) return Num(0);
    return -eps_ * s_;
  }
  void observe(Move x) override {
    if (!stopped_ && !guard_holds()) stopped_ = true;
    capital_ += stake() * x.value();
    ++n_;
    s_ += x.value();
  }
  Num capital() const override { return capital_; }
  bool stopped() const override { return stopped_; }
  std::unique_ptr<Strategy<Num>> clone() const override {
    return std::make_unique<StoppedAdditive>(*this);
  }
  std::string describe() const override { return "stopadd:eps=" + label_; }

 private:
  // Round i = n_ + 1 is allowed iff (|s_{i-1}| + 1)^2 <= i + m.
  bool guard_holds() const {
    const long a = (s_ < 0 ? -s_ : s_) + 1;
    return a * a <= static_cast<long>(n_) + 1 + m_;
  }

  std::string label_;
  Num eps_;
  long m_;
  Num capital_{};
  std::size_t n_ = 0;
  long s_ = 0;
  bool stopped_ = false;
};

template <class Num>
class OneSided final : public Strategy<Num> {
 public:
  OneSided(long level, Direction direction)
      : level_(level),
        direction_(direction),
        bet_(direction == Direction::down ? ratio<Num>(1, static_cast<std::size_t>(level))
                                          : ratio<Num>(-1, static_cast<std::size_t>(level))) {}

  Num stake() const override { return hit_ ? Num(0) : bet_; }
  void observe(Move x) override {
    capital_ += stake() * x.value();
    s_ += x.value();
    if (direction_ == Direction::down ? s_ <= -level_ : s_ >= level_) hit_ = true;
  }
  Num capital() const override { return capital_; }
  bool stopped() const override { return hit_; }
  std::unique_ptr<Strategy<Num>> clone() const override {
    return std::make_unique<OneSided>(*this);
  }
  std::string describe() const override {
    return "oneside:N=" + std::to_string(level_) +
           (direction_ == Direction::down ? ",dir=down" : ",dir=up");
  }

 private:
  long level_;
  Direction direction_;
  Num bet_;
  Num capital_{};
  long s_ = 0;
  bool hit_ = false;
};

template <class Num>
class PathBettor final : public Strategy<Num> {
 public:
  PathBettor(Situation target, const Rational& budget)
      : target_(std::move(target)), label_(to_string(budget)), budget_(from_rational<Num>(budget)) {
    done_ = target_.empty();
  }

  Num stake() const override {
    if (done_) return Num(0);
    return (budget_ + capital_) * target_[n_].value();
  }
  void observe(Move x) override {
    capital_ += stake() * x.value();
    ++n_;
    if (n_ >= target_.length() || budget_ + capital_ == 0) done_ = true;
  }
  Num capital() const override { return capital_; }
  bool stopped() const override { return done_; }
  std::unique_ptr<Strategy<Num>> clone() const override {
    return std::make_unique<PathBettor>(*this);
  }
  std::string describe() const override {
    return "pathbet:target=" + target_.str() + ",budget=" + label_;
  }

 private:
  Situation target_;
  std::string label_;
  Num budget_;
  Num capital_{};
  std::size_t n_ = 0;
  bool done_ = false;
};

// Accounts that stop are folded into a constant and dropped, so long sums of
// short-lived bettors stay cheap to step and clone.
template <class Num>
class WeightedSum final : public Strategy<Num> {
 public:
  struct Part {
    Num weight;
    std::shared_ptr<Strategy<Num>> strategy;  // copy-on-write across clones
  };

  WeightedSum(std::vector<Part> parts, std::string label)
      : parts_(std::move(parts)), label_(std::move(label)) {
    fold_stopped();
  }

  Num stake() const override {
    Num total(0);
    for (const auto& p : parts_) total += p.weight * p.strategy->stake();
    return total;
  }
  void observe(Move x) override {
    for (auto& p : parts_) {
      if (p.strategy.use_count() > 1) p.strategy = std::shared_ptr<Strategy<Num>>(p.strategy->clone());
      p.strategy->observe(x);
    }
    fold_stopped();
  }
  Num capital() const override {
    Num total = frozen_;
    for (const auto& p : parts_) total += p.weight * p.strategy->capital();
    return total;
  }
  bool stopped() const override { return parts_.empty(); }
  std::unique_ptr<Strategy<Num>> clone() const override {
    return std::make_unique<WeightedSum>(*this);
  }
  std::string describe() const override { return label_; }

 private:
  void fold_stopped() {
    std::erase_if(parts_, [&](const Part& p) {
      if (!p.strategy->stopped()) return false;
      frozen_ += p.weight * p.strategy->capital();
      return true;
    });
  }

  std::vector<Part> parts_;
  std::string label_;
  Num frozen_{};
};

}  // namespace

template <class Num>
StrategyPtr<Num> zero_strategy() {
  return std::make_unique<ZeroStrategy<Num>>();
}

template <class Num>
StrategyPtr<Num> constant_strategy(const Rational& stake) {
  return std::make_unique<ConstantStrategy<Num>>(stake);
}

template <class Num>
StrategyPtr<Num> multiplicative_contrarian(const Rational& c) {
  if (c <= 0 || c > Rational(1, 2)) {
    throw std::invalid_argument("multiplicative contrarian needs 0 < c <= 1/2, got " + to_string(c));
  }
  return std::make_unique<MultiplicativeContrarian<Num>>(c);
}

template <class Num>
StrategyPtr<Num> additive_contrarian(const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("additive contrarian needs eps > 0, got " + to_string(eps));
  return std::make_unique<AdditiveContrarian<Num>>(eps);
}

template <class Num>
StrategyPtr<Num> stopped_additive(const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("stopped additive needs eps > 0, got " + to_string(eps));
  const Rational m = Rational(2) / eps;
  if (boost::multiprecision::denominator(m) != 1) {
    throw std::invalid_argument("stopped additive needs eps = 2/m for a positive integer m, got " +
                                to_string(eps));
  }
  return std::make_unique<StoppedAdditive<Num>>(eps, boost::multiprecision::numerator(m).convert_to<long>());
}

template <class Num>
StrategyPtr<Num> one_sided(long level, Direction direction) {
  if (level < 1) throw std::invalid_argument("one-sided level N must be at least 1");
  return std::make_unique<OneSided<Num>>(level, direction);
}

template <class Num>
StrategyPtr<Num> path_bettor(Situation target, const Rational& budget) {
  if (budget <= 0) throw std::invalid_argument("path bettor budget must be positive");
  return std::make_unique<PathBettor<Num>>(std::move(target), budget);
}

template <class Num>
StrategyPtr<Num> mixture(MixtureSpec<Num> spec) {
  if (spec.tail_weight < 0) throw std::invalid_argument("mixture tail weight must be nonnegative");
  Rational total = spec.tail_weight;
  std::vector<typename WeightedSum<Num>::Part> parts;
  std::string label = "mix:[";
  for (auto& c : spec.components) {
    if (c.weight <= 0) throw std::invalid_argument("mixture weights must be positive");
    if (!c.strategy) throw std::invalid_argument("mixture component is empty");
    total += c.weight;
    label += to_string(c.weight) + "@" + c.strategy->describe() + ",";
    parts.push_back({from_rational<Num>(c.weight), std::shared_ptr<Strategy<Num>>(std::move(c.strategy))});
  }
  if (total != 1) {
    throw std::invalid_argument("mixture weights sum to " + to_string(total) + ", not 1");
  }
  label += spec.tail_weight > 0 ? to_string(spec.tail_weight) + "]" : "]";
  if (label.ends_with(",]")) label.erase(label.size() - 2, 1);
  return std::make_unique<WeightedSum<Num>>(std::move(parts), std::move(label));
}

template <class Num>
StrategyPtr<Num> portfolio(std::vector<StrategyPtr<Num>> strategies) {
  std::vector<typename WeightedSum<Num>::Part> parts;
  parts.reserve(strategies.size());
  for (auto& s : strategies) parts.push_back({Num(1), std::shared_ptr<Strategy<Num>>(std::move(s))});
  std::string label = "portfolio:" + std::to_string(parts.size());
  return std::make_unique<WeightedSum<Num>>(std::move(parts), std::move(label));
}

template <class Num>
StrategyPtr<Num> truncated_q(int depth) {
  if (depth < 1) throw std::invalid_argument("mixture depth must be at least 1");
  MixtureSpec<Num> spec;
  for (int i = 1; i <= depth; ++i) {
    spec.components.push_back({pow2(-i), multiplicative_contrarian<Num>(pow2(-i))});
  }
  spec.tail_weight = pow2(-depth);
  return mixture(std::move(spec));
}

template <class Num>
StrategyPtr<Num> truncated_additive_mixture(int depth) {
  if (depth < 1) throw std::invalid_argument("mixture depth must be at least 1");
  MixtureSpec<Num> spec;
  for (int i = 1; i <= depth; ++i) {
    spec.components.push_back({pow2(-i), stopped_additive<Num>(pow2(-i))});
  }
  spec.tail_weight = pow2(-depth);
  return mixture(std::move(spec));
}

template <class Num>
SignForcing<Num>::SignForcing(SignForcingOptions options)
    : opt_(std::move(options)), unit_(from_rational<Num>(opt_.unit)) {
  if (opt_.unit <= 0) throw std::invalid_argument("sign-forcing unit must be positive");
}

template <class Num>
Num SignForcing<Num>::stake() const {
  if (!hedging()) return Num(0);
  const std::size_t w = log_.back().w;
  const std::size_t j = n_ - w;
  if (j >= table_->horizon()) {
    throw HedgeTruncated("hedge for the excursion from round " + std::to_string(w) +
                         " ran past its table horizon at round " + std::to_string(n_ + 1));
  }
  return quantity_ * delta_hedge_bet(*table_, j, s_);
}

template <class Num>
void SignForcing<Num>::observe(Move x) {
  capital_ += stake() * x.value();
  ++n_;
  s_ += x.value();

  if (hedging()) {
    if (boundary_exceeds(static_cast<std::int64_t>(n_), s_, 0)) {
      auto& rec = log_.back();
      rec.v = n_;
      rec.side = s_ < 0 ? Side::negative : Side::positive;
      rec.wealth_at_v = wealth();
      table_.reset();
      last_v_ = n_;
    }
    return;
  }
  if (s_ != 0 || n_ <= last_v_) return;
  if (!log_.empty() && !log_.back().v) return;  // open excursion without a table

  ExcursionRecord<Num> rec;
  rec.w = n_;
  rec.wealth_at_w = wealth();
  log_.push_back(rec);
  // Half the wealth buys wealth-many tickets at 1/2.
  quantity_ = wealth();
  if (opt_.horizon > n_) {
    table_ = std::make_shared<const EtaTable<Num>>(EtaOptions{
        static_cast<std::int64_t>(n_), opt_.horizon - n_, Tail::half, opt_.pays, opt_.stride});
  }
}

template <class Num>
std::unique_ptr<Strategy<Num>> SignForcing<Num>::clone() const {
  return std::make_unique<SignForcing>(*this);
}

template <class Num>
std::string SignForcing<Num>::describe() const {
  return std::string("signforce:pay=") + (opt_.pays == Side::negative ? "neg" : "pos");
}

#define FAIRCOIN_INSTANTIATE(Num)                                                        \
  template StrategyPtr<Num> zero_strategy<Num>();                                        \
  template StrategyPtr<Num> constant_strategy<Num>(const Rational&);                     \
  template StrategyPtr<Num> multiplicative_contrarian<Num>(const Rational&);             \
  template StrategyPtr<Num> additive_contrarian<Num>(const Rational&);                   \
  template StrategyPtr<Num> stopped_additive<Num>(const Rational&);                      \
  template StrategyPtr<Num> one_sided<Num>(long, Direction);                             \
  template StrategyPtr<Num> path_bettor<Num>(Situation, const Rational&);                \
  template StrategyPtr<Num> mixture<Num>(MixtureSpec<Num>);                              \
  template StrategyPtr<Num> portfolio<Num>(std::vector<StrategyPtr<Num>>);               \
  template StrategyPtr<Num> truncated_q<Num>(int);                                       \
  template StrategyPtr<Num> truncated_additive_mixture<Num>(int);                        \
  template class SignForcing<Num>;

FAIRCOIN_INSTANTIATE(Rational)
FAIRCOIN_INSTANTIATE(double)

#undef FAIRCOIN_INSTANTIATE

}  // namespace faircoin
