// A small language for morphisms in the braided category:
//   expr := seq
//   seq  := ten (";" ten)*            f ; g  is g after f
//   ten  := atom ("x" atom)*
//   atom := "(" expr ")" | "id(" name ")" | "psi(" name "," name ")" | key "[" name "]" | name
//   key  := m | delta | eps | eta | S | Sinv | act | coact
// The aliases unit, counit and antipode read as eta, eps and S.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "braidhopf/braided.hpp"
#include "braidhopf/yd.hpp"

namespace braidhopf::dsl {

struct SyntaxError : std::runtime_error {
  SyntaxError(const std::string& msg, int line, int column);
  int line, column;
};

struct EvalError : std::runtime_error {
  enum class Kind { TypeMismatch, Unbound, WrongKind };
  EvalError(Kind kind, const std::string& msg) : std::runtime_error(msg), kind(kind) {}
  Kind kind;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Name, Identity, Braiding, Structure, Tensor, Compose };
  Kind kind;
  std::string key;                 // structure key
  std::vector<std::string> names;  // referenced names
  ExprPtr left, right;             // binary nodes; compose reads left then right

  static ExprPtr name(std::string n);
  static ExprPtr identity(std::string space);
  static ExprPtr braiding(std::string a, std::string b);
  static ExprPtr structure(std::string key, std::string target);
  static ExprPtr tensor(ExprPtr a, ExprPtr b);
  static ExprPtr then(ExprPtr first, ExprPtr second);
};

bool operator==(const Expr& a, const Expr& b);

ExprPtr parse(const std::string& text);
std::string print(const Expr& e);
const std::vector<std::string>& structure_keys();

// Bindings of spaces, algebras, modules and raw maps under unique names.
class Environment {
 public:
  void bind_space(const std::string& name, SpacePtr space);
  // Binds the algebra and its underlying space.
  void bind_algebra(const std::string& name, BasePtr algebra);
  void bind_module(const std::string& name, SpacePtr carrier, std::optional<GradedMap> action,
                   std::optional<GradedMap> coaction);
  void bind_module(const std::string& name, const YDModule& v) { bind_module(name, v.carrier, v.action, v.coaction); }
  void bind_module(const std::string& name, const HopfModule& v) { bind_module(name, v.carrier, v.action, v.coaction); }
  void bind_map(const std::string& name, GradedMap map);

  SpacePtr space(const std::string& name) const;
  const StructureMaps& algebra(const std::string& name) const;
  const GradedMap& module_map(const std::string& name, const std::string& key) const;
  const GradedMap& map(const std::string& name) const;

 private:
  struct ModuleEntry {
    SpacePtr carrier;
    std::optional<GradedMap> action, coaction;
  };
  void claim(const std::string& name);
  std::map<std::string, SpacePtr> spaces_;
  std::map<std::string, BasePtr> algebras_;
  std::map<std::string, ModuleEntry> modules_;
  std::map<std::string, GradedMap> maps_;
};

GradedMap evaluate(const Expr& e, const Environment& env);
GradedMap evaluate(const std::string& text, const Environment& env);

struct IdentityVerdict {
  bool equal = true;
  nlohmann::json witness;  // the basis vector where the two sides differ
  nlohmann::json to_json() const;
};
IdentityVerdict check_identity(const Expr& lhs, const Expr& rhs, const Environment& env);
IdentityVerdict check_identity(const std::string& lhs, const std::string& rhs, const Environment& env);

struct NamedIdentity {
  std::string check;  // name of the matching check in the dedicated checkers
  std::string lhs, rhs;
};
// Written for an algebra bound as B and a module bound as V.
const std::vector<NamedIdentity>& yd_suite();
const std::vector<NamedIdentity>& hopf_module_suite(HopfModuleKind kind);
const std::vector<NamedIdentity>& bialgebra_suite();
// Runs a suite and reports one check per identity.
std::vector<CheckResult> run_suite(const std::vector<NamedIdentity>& suite, const Environment& env);

}  // namespace braidhopf::dsl
