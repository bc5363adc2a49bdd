#include "faircoin/spec_parser.hpp"

#include <cctype>
#include <charconv>

namespace faircoin {

ParseError::ParseError(std::size_t pos, const std::string& message)
    : std::invalid_argument("at position " + std::to_string(pos) + ": " + message), position(pos) {}

namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  SpecNode parse() {
    SpecNode node = spec();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return node;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_, message); }

  bool at(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  void expect(char c) {
    if (!at(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string ident() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    if (pos_ == start) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string value_until(std::string_view stops) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && stops.find(text_[pos_]) == std::string_view::npos) ++pos_;
    if (pos_ == start) fail("expected a value");
    return std::string(text_.substr(start, pos_ - start));
  }

  // After a ',' inside a parameter list: is the next thing "key=" ?
  bool key_follows() const {
    std::size_t p = pos_ + 1;
    const std::size_t start = p;
    while (p < text_.size() && ident_char(text_[p])) ++p;
    return p > start && p < text_.size() && text_[p] == '=';
  }

  SpecNode spec() {
    SpecNode node;
    node.position = pos_;
    node.name = ident();
    if (!at(':')) return node;
    ++pos_;
    if (node.name == "mix") {
      mix_body(node);
    } else if (node.name == "fixed") {
      node.param_positions.push_back(pos_);
      node.params.emplace_back("", value_until(",]@"));
    } else {
      params(node);
    }
    return node;
  }

  void params(SpecNode& node) {
    for (;;) {
      std::string key = ident();
      expect('=');
      node.param_positions.push_back(pos_);
      node.params.emplace_back(std::move(key), value_until(",]@"));
      if (at(',') && key_follows()) {
        ++pos_;
        continue;
      }
      return;
    }
  }

  void mix_body(SpecNode& node) {
    expect('[');
    for (;;) {
      const std::size_t weight_pos = pos_;
      std::string weight = value_until("@,]");
      if (at('@')) {
        ++pos_;
        node.items.emplace_back(std::move(weight), spec());
        node.param_positions.push_back(weight_pos);
      } else {
        if (!at(']')) fail("a bare weight is the idle tail and must come last");
        node.tail = std::move(weight);
        node.param_positions.push_back(weight_pos);
      }
      if (at(',')) {
        ++pos_;
        continue;
      }
      expect(']');
      return;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Keyed access to a node's parameters with position-carrying errors.
class Params {
 public:
  explicit Params(const SpecNode& node) : node_(node), used_(node.params.size(), false) {}

  std::optional<std::pair<std::string, std::size_t>> get(const std::string& key) {
    for (std::size_t i = 0; i < node_.params.size(); ++i) {
      if (node_.params[i].first == key) {
        used_[i] = true;
        return std::make_pair(node_.params[i].second, node_.param_positions[i]);
      }
    }
    return std::nullopt;
  }

  std::pair<std::string, std::size_t> require(const std::string& key) {
    auto v = get(key);
    if (!v) throw ParseError(node_.position, "'" + node_.name + "' needs " + key + "=");
    return *v;
  }

  Rational rational(const std::string& key) {
    auto [text, pos] = require(key);
    return to_rational(text, pos);
  }

  long integer(const std::string& key, std::optional<long> fallback = std::nullopt) {
    auto v = get(key);
    if (!v) {
      if (fallback) return *fallback;
      throw ParseError(node_.position, "'" + node_.name + "' needs " + key + "=");
    }
    return to_integer(v->first, v->second);
  }

  Move move(const std::string& key, Move fallback) {
    auto v = get(key);
    if (!v) return fallback;
    if (v->first == "-1" || v->first == "-") return Move::down();
    if (v->first == "+1" || v->first == "1" || v->first == "+") return Move::up();
    throw ParseError(v->second, "expected -1 or +1, got '" + v->first + "'");
  }

  void finish() const {
    for (std::size_t i = 0; i < used_.size(); ++i) {
      if (!used_[i]) {
        const auto& key = node_.params[i].first;
        throw ParseError(node_.param_positions[i],
                         key.empty() ? "'" + node_.name + "' takes no value"
                                     : "unknown parameter '" + key + "' for '" + node_.name + "'");
      }
    }
  }

  static Rational to_rational(const std::string& text, std::size_t pos) {
    try {
      return parse_rational(text);
    } catch (const std::invalid_argument& e) {
      throw ParseError(pos, e.what());
    }
  }

  static long to_integer(const std::string& text, std::size_t pos) {
    long out = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    if (ec != std::errc() || ptr != end) throw ParseError(pos, "expected an integer, got '" + text + "'");
    return out;
  }

 private:
  const SpecNode& node_;
  std::vector<bool> used_;
};

Situation to_situation(const std::string& text, std::size_t pos) {
  try {
    return Situation::parse(text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(pos, e.what());
  }
}

void require_no_params(const SpecNode& node) {
  if (!node.params.empty()) Params(node).finish();
}

template <class Num>
StrategyPtr<Num> build_strategy(const SpecNode& node, const SpecContext& context) {
  try {
    if (node.name == "mix") {
      if (node.items.empty()) throw ParseError(node.position, "empty mixture");
      MixtureSpec<Num> spec;
      for (std::size_t i = 0; i < node.items.size(); ++i) {
        const auto& [weight, child] = node.items[i];
        spec.components.push_back({Params::to_rational(weight, node.param_positions[i]),
                                   build_strategy<Num>(child, context)});
      }
      if (node.tail) spec.tail_weight = Params::to_rational(*node.tail, node.param_positions.back());
      return mixture(std::move(spec));
    }
    Params p(node);
    StrategyPtr<Num> out;
    if (node.name == "zero") {
      out = zero_strategy<Num>();
    } else if (node.name == "const") {
      out = constant_strategy<Num>(p.rational("M"));
    } else if (node.name == "mulc") {
      out = multiplicative_contrarian<Num>(p.rational("c"));
    } else if (node.name == "addc") {
      out = additive_contrarian<Num>(p.rational("eps"));
    } else if (node.name == "stopadd") {
      out = stopped_additive<Num>(p.rational("eps"));
    } else if (node.name == "oneside") {
      const long level = p.integer("N");
      Direction dir = Direction::down;
      if (auto d = p.get("dir")) {
        if (d->first == "up") {
          dir = Direction::up;
        } else if (d->first != "down") {
          throw ParseError(d->second, "dir must be down or up");
        }
      }
      out = one_sided<Num>(level, dir);
    } else if (node.name == "pathbet") {
      auto [target, pos] = p.require("target");
      out = path_bettor<Num>(to_situation(target, pos), p.rational("budget"));
    } else if (node.name == "mixq") {
      out = truncated_q<Num>(static_cast<int>(p.integer("I", 20)));
    } else if (node.name == "mixe3") {
      out = truncated_additive_mixture<Num>(static_cast<int>(p.integer("I", 20)));
    } else if (node.name == "signforce") {
      SignForcingOptions opt;
      opt.horizon = context.horizon;
      if (auto pay = p.get("pay")) {
        if (pay->first == "pos") {
          opt.pays = Side::positive;
        } else if (pay->first != "neg") {
          throw ParseError(pay->second, "pay must be neg or pos");
        }
      }
      if (auto unit = p.get("unit")) opt.unit = Params::to_rational(unit->first, unit->second);
      out = std::make_unique<SignForcing<Num>>(opt);
    } else {
      throw ParseError(node.position, "unknown strategy '" + node.name + "'");
    }
    p.finish();
    return out;
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(node.position, e.what());
  }
}

}  // namespace

SpecNode parse_spec_tree(std::string_view text) { return Parser(text).parse(); }

template <class Num>
StrategyPtr<Num> parse_strategy(std::string_view text, const SpecContext& context) {
  return build_strategy<Num>(parse_spec_tree(text), context);
}

template <class Num>
RealityPtr<Num> parse_reality(std::string_view text, const SpecContext& context) {
  const SpecNode node = parse_spec_tree(text);
  if (!node.items.empty()) throw ParseError(node.position, "a reality source cannot be a mixture");
  Params p(node);
  RealityPtr<Num> out;
  if (node.name == "fixed") {
    auto [path, pos] = p.require("");
    out = fixed_reality<Num>(to_situation(path, pos));
  } else if (node.name == "iid") {
    auto seed = p.get("seed");
    std::uint64_t value = context.seed;
    if (seed) {
      const char* end = seed->first.data() + seed->first.size();
      auto [ptr, ec] = std::from_chars(seed->first.data(), end, value);
      if (ec != std::errc() || ptr != end) throw ParseError(seed->second, "bad seed '" + seed->first + "'");
    }
    out = iid_reality<Num>(value);
  } else if (node.name == "alt") {
    require_no_params(node);
    out = alternating_reality<Num>();
  } else if (node.name == "greedy") {
    out = greedy_reality<Num>(p.move("tie", Move::down()));
  } else if (node.name == "minimax") {
    const long depth = p.integer("depth");
    if (depth < 1) throw ParseError(node.position, "minimax depth must be at least 1");
    const Move tie = p.move("tie", Move::down());
    out = minimax_reality<Num>(static_cast<std::size_t>(depth), tie);
  } else {
    throw ParseError(node.position, "unknown reality '" + node.name + "'");
  }
  p.finish();
  return out;
}

template StrategyPtr<Rational> parse_strategy<Rational>(std::string_view, const SpecContext&);
template StrategyPtr<double> parse_strategy<double>(std::string_view, const SpecContext&);
template RealityPtr<Rational> parse_reality<Rational>(std::string_view, const SpecContext&);
template RealityPtr<double> parse_reality<double>(std::string_view, const SpecContext&);

}  // namespace faircoin
