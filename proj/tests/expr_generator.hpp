// Random well-typed morphism expressions for parser and evaluator tests.
#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "braidhopf/dsl.hpp"

namespace braidhopf::testing {

using dsl::Expr;
using dsl::ExprPtr;

// Random well-typed expressions over an algebra B and a module V. Types are strings over {B, V}.
struct ExprGenerator {
  std::mt19937 rng;
  explicit ExprGenerator(unsigned seed) : rng(seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  struct Typed {
    ExprPtr e;
    std::string cod;
  };

  // One atom consuming a prefix of dom.
  Typed atom(const std::string& dom, std::size_t& used, std::size_t room) {
    std::vector<std::pair<ExprPtr, std::pair<std::string, std::string>>> options;
    auto add = [&](ExprPtr e, std::string in, std::string out) {
      if (dom.compare(0, in.size(), in) == 0 && out.size() <= in.size() + room) options.push_back({e, {in, out}});
    };
    add(Expr::identity("B"), "B", "B");
    add(Expr::identity("V"), "V", "V");
    add(Expr::braiding("B", "V"), "BV", "VB");
    add(Expr::braiding("V", "B"), "VB", "BV");
    add(Expr::braiding("B", "B"), "BB", "BB");
    add(Expr::structure("m", "B"), "BB", "B");
    add(Expr::structure("delta", "B"), "B", "BB");
    add(Expr::structure("S", "B"), "B", "B");
    add(Expr::structure("Sinv", "B"), "B", "B");
    add(Expr::structure("eps", "B"), "B", "");
    add(Expr::structure("act", "V"), "BV", "V");
    add(Expr::structure("coact", "V"), "V", "BV");
    if (dom.empty() || (room > 0 && pick(6) == 0)) options = {{Expr::structure("eta", "B"), {"", "B"}}};
    auto& [e, io] = options[static_cast<std::size_t>(pick(static_cast<int>(options.size())))];
    used = io.first.size();
    return {e, io.second};
  }

  // A tensor layer covering all of dom.
  Typed layer(const std::string& dom, std::size_t max_len) {
    ExprPtr e;
    std::string cod;
    std::size_t pos = 0;
    do {
      std::size_t used = 0;
      std::size_t room = max_len > dom.size() + cod.size() - pos ? max_len - (dom.size() + cod.size() - pos) : 0;
      Typed a = atom(dom.substr(pos), used, room);
      pos += used;
      cod += a.cod;
      e = e ? Expr::tensor(e, a.e) : a.e;
    } while (pos < dom.size());
    return {e, cod};
  }

  Typed expr(const std::string& dom, int depth, std::size_t max_len) {
    int choice = depth <= 0 ? 0 : pick(3);
    if (choice == 1) {
      Typed f = expr(dom, depth - 1, max_len);
      Typed g = expr(f.cod, depth - 1, max_len);
      return {Expr::then(f.e, g.e), g.cod};
    }
    if (choice == 2 && dom.size() >= 2) {
      std::size_t cut = 1 + static_cast<std::size_t>(pick(static_cast<int>(dom.size()) - 1));
      Typed f = expr(dom.substr(0, cut), depth - 1, max_len - 1);
      Typed g = expr(dom.substr(cut), depth - 1, max_len - f.cod.size());
      return {Expr::tensor(f.e, g.e), f.cod + g.cod};
    }
    return layer(dom, max_len);
  }
};

inline std::string random_domain(ExprGenerator& g) {
  static const std::vector<std::string> doms{"B", "V", "BV", "BB", "VB", "BBV", "BVB"};
  return doms[static_cast<std::size_t>(g.pick(static_cast<int>(doms.size())))];
}

}  // namespace braidhopf::testing
