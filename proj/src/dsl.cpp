#include "braidhopf/dsl.hpp"

#include <algorithm>
#include <cctype>

namespace braidhopf::dsl {

SyntaxError::SyntaxError(const std::string& msg, int line, int column)
    : std::runtime_error("syntax error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line(line),
      column(column) {}

// ---------------------------------------------------------------- AST

namespace {

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

std::string canonical_key(const std::string& k) {
  if (k == "unit") return "eta";
  if (k == "counit") return "eps";
  if (k == "antipode") return "S";
  return k;
}

bool is_key(const std::string& k) {
  const auto& keys = structure_keys();
  return std::find(keys.begin(), keys.end(), canonical_key(k)) != keys.end();
}

}  // namespace

const std::vector<std::string>& structure_keys() {
  static const std::vector<std::string> keys{"m", "delta", "eps", "eta", "S", "Sinv", "act", "coact"};
  return keys;
}

ExprPtr Expr::name(std::string n) { return make({Kind::Name, "", {std::move(n)}, nullptr, nullptr}); }
ExprPtr Expr::identity(std::string space) { return make({Kind::Identity, "", {std::move(space)}, nullptr, nullptr}); }
ExprPtr Expr::braiding(std::string a, std::string b) {
  return make({Kind::Braiding, "", {std::move(a), std::move(b)}, nullptr, nullptr});
}
ExprPtr Expr::structure(std::string key, std::string target) {
  return make({Kind::Structure, canonical_key(key), {std::move(target)}, nullptr, nullptr});
}
ExprPtr Expr::tensor(ExprPtr a, ExprPtr b) { return make({Kind::Tensor, "", {}, std::move(a), std::move(b)}); }
ExprPtr Expr::then(ExprPtr first, ExprPtr second) {
  return make({Kind::Compose, "", {}, std::move(first), std::move(second)});
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.key != b.key || a.names != b.names) return false;
  if (a.kind == Expr::Kind::Tensor || a.kind == Expr::Kind::Compose) return *a.left == *b.left && *a.right == *b.right;
  return true;
}

// ---------------------------------------------------------------- parser

namespace {

struct Token {
  enum class Type { Ident, LParen, RParen, LBrack, RBrack, Comma, Semi, Cross, End };
  Type type;
  std::string text;
  int line, column;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t{Token::Type::End, std::string(1, c), line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) ++j;
      t.text = s.substr(i, j - i);
      t.type = t.text == "x" ? Token::Type::Cross : Token::Type::Ident;
      out.push_back(t);
      advance(j - i);
      continue;
    }
    switch (c) {
      case '(': t.type = Token::Type::LParen; break;
      case ')': t.type = Token::Type::RParen; break;
      case '[': t.type = Token::Type::LBrack; break;
      case ']': t.type = Token::Type::RBrack; break;
      case ',': t.type = Token::Type::Comma; break;
      case ';': t.type = Token::Type::Semi; break;
      default: throw SyntaxError("unexpected character '" + t.text + "'", line, col);
    }
    out.push_back(t);
    advance(1);
  }
  out.push_back({Token::Type::End, "end of input", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  ExprPtr run() {
    ExprPtr e = seq();
    if (peek().type != Token::Type::End) fail("expected ';', 'x' or end of input");
    return e;
  }

 private:
  const Token& peek() const { return t_[pos_]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg + ", found '" + peek().text + "'", peek().line, peek().column);
  }
  Token expect(Token::Type type, const char* what) {
    if (peek().type != type) fail(std::string("expected ") + what);
    return t_[pos_++];
  }
  std::string name() { return expect(Token::Type::Ident, "a name").text; }

  ExprPtr seq() {
    ExprPtr e = ten();
    while (peek().type == Token::Type::Semi) {
      ++pos_;
      e = Expr::then(e, ten());
    }
    return e;
  }
  ExprPtr ten() {
    ExprPtr e = atom();
    while (peek().type == Token::Type::Cross) {
      ++pos_;
      e = Expr::tensor(e, atom());
    }
    return e;
  }
  ExprPtr atom() {
    if (peek().type == Token::Type::LParen) {
      ++pos_;
      ExprPtr e = seq();
      expect(Token::Type::RParen, "')'");
      return e;
    }
    if (peek().type != Token::Type::Ident) fail("expected a morphism");
    Token id = t_[pos_++];
    Token::Type next = peek().type;
    if (id.text == "id" && next == Token::Type::LParen) {
      ++pos_;
      std::string a = name();
      expect(Token::Type::RParen, "')'");
      return Expr::identity(a);
    }
    if (id.text == "psi" && next == Token::Type::LParen) {
      ++pos_;
      std::string a = name();
      expect(Token::Type::Comma, "','");
      std::string b = name();
      expect(Token::Type::RParen, "')'");
      return Expr::braiding(a, b);
    }
    if (next == Token::Type::LBrack) {
      if (!is_key(id.text)) throw SyntaxError("unknown structure map '" + id.text + "'", id.line, id.column);
      ++pos_;
      std::string a = name();
      expect(Token::Type::RBrack, "']'");
      return Expr::structure(id.text, a);
    }
    return Expr::name(id.text);
  }

  std::vector<Token> t_;
  std::size_t pos_ = 0;
};

// Binding strength: compose 1, tensor 2, atoms 3.
int strength(const Expr& e) {
  if (e.kind == Expr::Kind::Compose) return 1;
  if (e.kind == Expr::Kind::Tensor) return 2;
  return 3;
}

}  // namespace

ExprPtr parse(const std::string& text) { return Parser(lex(text)).run(); }

std::string print(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Name: return e.names[0];
    case Expr::Kind::Identity: return "id(" + e.names[0] + ")";
    case Expr::Kind::Braiding: return "psi(" + e.names[0] + "," + e.names[1] + ")";
    case Expr::Kind::Structure: return e.key + "[" + e.names[0] + "]";
    case Expr::Kind::Tensor:
    case Expr::Kind::Compose: {
      int s = strength(e);
      // Both operators associate to the left; a right operand of equal strength needs parentheses.
      std::string l = print(*e.left), r = print(*e.right);
      if (strength(*e.left) < s) l = "(" + l + ")";
      if (strength(*e.right) <= s) r = "(" + r + ")";
      return l + (e.kind == Expr::Kind::Tensor ? " x " : " ; ") + r;
    }
  }
  return "";
}

// ---------------------------------------------------------------- environment

void Environment::claim(const std::string& name) {
  if (spaces_.count(name) || algebras_.count(name) || modules_.count(name) || maps_.count(name))
    throw std::invalid_argument("name already bound: " + name);
}

void Environment::bind_space(const std::string& name, SpacePtr space) {
  claim(name);
  spaces_[name] = std::move(space);
}

void Environment::bind_algebra(const std::string& name, BasePtr algebra) {
  claim(name);
  algebras_[name] = std::move(algebra);
}

void Environment::bind_module(const std::string& name, SpacePtr carrier, std::optional<GradedMap> action,
                              std::optional<GradedMap> coaction) {
  claim(name);
  modules_[name] = {std::move(carrier), std::move(action), std::move(coaction)};
}

void Environment::bind_map(const std::string& name, GradedMap map) {
  claim(name);
  maps_[name] = std::move(map);
}

SpacePtr Environment::space(const std::string& name) const {
  if (auto it = spaces_.find(name); it != spaces_.end()) return it->second;
  if (auto it = algebras_.find(name); it != algebras_.end()) return it->second->space;
  if (auto it = modules_.find(name); it != modules_.end()) return it->second.carrier;
  if (maps_.count(name)) throw EvalError(EvalError::Kind::WrongKind, "'" + name + "' is a map, not a space");
  throw EvalError(EvalError::Kind::Unbound, "unbound identifier '" + name + "'");
}

const StructureMaps& Environment::algebra(const std::string& name) const {
  if (auto it = algebras_.find(name); it != algebras_.end()) return *it->second;
  if (spaces_.count(name) || modules_.count(name) || maps_.count(name))
    throw EvalError(EvalError::Kind::WrongKind, "'" + name + "' is not an algebra");
  throw EvalError(EvalError::Kind::Unbound, "unbound identifier '" + name + "'");
}

const GradedMap& Environment::module_map(const std::string& name, const std::string& key) const {
  auto it = modules_.find(name);
  if (it == modules_.end()) {
    if (spaces_.count(name) || algebras_.count(name) || maps_.count(name))
      throw EvalError(EvalError::Kind::WrongKind, "'" + name + "' is not a module");
    throw EvalError(EvalError::Kind::Unbound, "unbound identifier '" + name + "'");
  }
  const auto& m = key == "act" ? it->second.action : it->second.coaction;
  if (!m) throw EvalError(EvalError::Kind::WrongKind, "module '" + name + "' has no " + key);
  return *m;
}

const GradedMap& Environment::map(const std::string& name) const {
  if (auto it = maps_.find(name); it != maps_.end()) return it->second;
  if (spaces_.count(name) || algebras_.count(name) || modules_.count(name))
    throw EvalError(EvalError::Kind::WrongKind, "'" + name + "' is not a morphism");
  throw EvalError(EvalError::Kind::Unbound, "unbound identifier '" + name + "'");
}

// ---------------------------------------------------------------- evaluation

GradedMap evaluate(const Expr& e, const Environment& env) {
  switch (e.kind) {
    case Expr::Kind::Name: return env.map(e.names[0]);
    case Expr::Kind::Identity: return GradedMap::identity(Object(env.space(e.names[0])));
    case Expr::Kind::Braiding: {
      Object a(env.space(e.names[0])), b(env.space(e.names[1]));
      try {
        return braiding(a, b);
      } catch (const StructuralError& err) {
        throw EvalError(EvalError::Kind::TypeMismatch, err.what());
      }
    }
    case Expr::Kind::Structure: {
      const std::string& t = e.names[0];
      if (e.key == "act" || e.key == "coact") return env.module_map(t, e.key);
      const StructureMaps& a = env.algebra(t);
      if (e.key == "m") return a.m;
      if (e.key == "delta") return a.delta;
      if (e.key == "eps") return a.eps;
      if (e.key == "eta") return a.eta;
      if (e.key == "S") return a.S;
      return a.S_inv;
    }
    case Expr::Kind::Tensor: return tensor_map(evaluate(*e.left, env), evaluate(*e.right, env));
    case Expr::Kind::Compose: {
      GradedMap f = evaluate(*e.left, env), g = evaluate(*e.right, env);
      if (g.domain() != f.codomain()) {
        throw EvalError(EvalError::Kind::TypeMismatch, "type mismatch: '" + print(*e.left) + "' ends in " +
                                                           f.codomain().str() + " but '" + print(*e.right) +
                                                           "' starts from " + g.domain().str());
      }
      return compose(g, f);
    }
  }
  throw std::logic_error("unknown expression kind");
}

GradedMap evaluate(const std::string& text, const Environment& env) { return evaluate(*parse(text), env); }

nlohmann::json IdentityVerdict::to_json() const { return {{"equal", equal}, {"witness", witness}}; }

IdentityVerdict check_identity(const Expr& lhs, const Expr& rhs, const Environment& env) {
  GradedMap a = evaluate(lhs, env), b = evaluate(rhs, env);
  if (a.domain() != b.domain() || a.codomain() != b.codomain()) {
    throw EvalError(EvalError::Kind::TypeMismatch, "sides differ in type: " + a.domain().str() + " -> " +
                                                       a.codomain().str() + " and " + b.domain().str() + " -> " +
                                                       b.codomain().str());
  }
  IdentityVerdict v;
  if (auto d = first_difference(a, b)) {
    v.equal = false;
    v.witness = d->to_json(a);
  }
  return v;
}

IdentityVerdict check_identity(const std::string& lhs, const std::string& rhs, const Environment& env) {
  return check_identity(*parse(lhs), *parse(rhs), env);
}

// ---------------------------------------------------------------- suites

const std::vector<NamedIdentity>& yd_suite() {
  static const std::vector<NamedIdentity> s{
      {"module_associativity", "m[B] x id(V) ; act[V]", "id(B) x act[V] ; act[V]"},
      {"module_unit", "eta[B] x id(V) ; act[V]", "id(V)"},
      {"comodule_coassociativity", "coact[V] ; delta[B] x id(V)", "coact[V] ; id(B) x coact[V]"},
      {"comodule_counit", "coact[V] ; eps[B] x id(V)", "id(V)"},
      {"yd_condition", "delta[B] x coact[V] ; id(B) x psi(B,B) x id(V) ; m[B] x act[V]",
       "delta[B] x id(V) ; id(B) x psi(B,V) ; act[V] x id(B) ; coact[V] x id(B) ; id(B) x psi(V,B) ; m[B] x id(V)"},
  };
  return s;
}

const std::vector<NamedIdentity>& hopf_module_suite(HopfModuleKind kind) {
  static const std::vector<NamedIdentity> regular{
      {"module_associativity", "m[B] x id(V) ; act[V]", "id(B) x act[V] ; act[V]"},
      {"module_unit", "eta[B] x id(V) ; act[V]", "id(V)"},
      {"comodule_coassociativity", "coact[V] ; delta[B] x id(V)", "coact[V] ; id(B) x coact[V]"},
      {"comodule_counit", "coact[V] ; eps[B] x id(V)", "id(V)"},
      {"hopf_module_compatibility", "act[V] ; coact[V]", "delta[B] x coact[V] ; id(B) x psi(B,B) x id(V) ; m[B] x act[V]"},
  };
  static const std::vector<NamedIdentity> trivial{
      regular[0], regular[1], regular[2], regular[3],
      {"trivial_coaction_compatibility", "act[V] ; coact[V]", "id(B) x coact[V] ; psi(B,B) x id(V) ; id(B) x act[V]"},
  };
  return kind == HopfModuleKind::Regular ? regular : trivial;
}

const std::vector<NamedIdentity>& bialgebra_suite() {
  static const std::vector<NamedIdentity> s{
      {"associativity", "m[B] x id(B) ; m[B]", "id(B) x m[B] ; m[B]"},
      {"unit", "eta[B] x id(B) ; m[B]", "id(B)"},
      {"unit", "id(B) x eta[B] ; m[B]", "id(B)"},
      {"coassociativity", "delta[B] ; delta[B] x id(B)", "delta[B] ; id(B) x delta[B]"},
      {"counit_law", "delta[B] ; eps[B] x id(B)", "id(B)"},
      {"counit_law", "delta[B] ; id(B) x eps[B]", "id(B)"},
      {"coproduct_multiplicative", "m[B] ; delta[B]", "delta[B] x delta[B] ; id(B) x psi(B,B) x id(B) ; m[B] x m[B]"},
      {"counit_multiplicative", "m[B] ; eps[B]", "eps[B] x eps[B]"},
      {"coproduct_unital", "eta[B] ; delta[B]", "eta[B] x eta[B]"},
      {"antipode", "delta[B] ; S[B] x id(B) ; m[B]", "eps[B] ; eta[B]"},
      {"antipode", "delta[B] ; id(B) x S[B] ; m[B]", "eps[B] ; eta[B]"},
  };
  return s;
}

std::vector<CheckResult> run_suite(const std::vector<NamedIdentity>& suite, const Environment& env) {
  std::vector<CheckResult> out;
  for (const auto& id : suite) {
    IdentityVerdict v = check_identity(id.lhs, id.rhs, env);
    auto it = std::find_if(out.begin(), out.end(), [&](const CheckResult& c) { return c.check == id.check; });
    if (it == out.end()) {
      out.push_back({id.check, v.equal, v.witness});
    } else if (it->pass && !v.equal) {
      it->pass = false;
      it->witness = v.witness;
    }
  }
  return out;
}

}  // namespace braidhopf::dsl
