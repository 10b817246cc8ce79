#include "relaxation.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace ncrelax {

int MonomialDictionary::lookup_or_insert(const Word& w) {
  auto it = index_of_.find(w);
  if (it != index_of_.end()) return it->second;
  words_.push_back(w);
  const int index = static_cast<int>(words_.size());
  index_of_.emplace(w, index);
  return index;
}

int MonomialDictionary::lookup(const Word& w) const {
  auto it = index_of_.find(w);
  return it == index_of_.end() ? 0 : it->second;
}

CanonicalMoment canonical_moment(const Word& w, const RuleSet& rs) {
  auto [sign, normal] = normalize_word(w, rs);
  auto [sign_adj, normal_adj] = normalize_word(involve(w), rs);
  if (word_less(normal_adj, normal)) return {sign_adj, std::move(normal_adj)};
  return {sign, std::move(normal)};
}

std::pair<Block, MonomialDictionary> moment_matrix(const std::vector<Word>& basis,
                                                   const RuleSet& rs) {
  const int n = static_cast<int>(basis.size());
  Block block(n, BlockKind::moment);
  MonomialDictionary dict;

  std::vector<Word> adjoints;
  adjoints.reserve(basis.size());
  for (const Word& v : basis) adjoints.push_back(involve(v));

  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      CanonicalMoment cm = canonical_moment(concat(adjoints[i], basis[j]), rs);
      AffineExpr& entry = block.at(i, j);
      if (cm.word.is_identity()) {
        entry.constant = cm.sign;
      } else {
        entry.add(dict.lookup_or_insert(cm.word), cm.sign);
      }
    }
  }
  return {std::move(block), std::move(dict)};
}

namespace {

std::vector<Word> basis_up_to(const std::vector<Word>& basis, int sub_order) {
  std::vector<Word> out;
  std::copy_if(basis.begin(), basis.end(), std::back_inserter(out),
               [sub_order](const Word& w) { return w.degree() <= sub_order; });
  return out;
}

int moment_index(const CanonicalMoment& cm, const MonomialDictionary& dict) {
  const int index = dict.lookup(cm.word);
  if (index == 0) {
    throw Error(ErrorCode::unknown_moment,
                "moment " + word_debug_string(cm.word) +
                    " is not in the monomial dictionary; the dictionary and "
                    "rules are inconsistent");
  }
  return index;
}

}  // namespace

Block localizing_matrix(const Polynomial& g, int sub_order,
                        const std::vector<Word>& basis,
                        const MonomialDictionary& dict, const RuleSet& rs,
                        int constraint_id) {
  if (sub_order < 0) {
    throw Error(ErrorCode::invalid_argument, "negative localizing order");
  }
  const std::vector<Word> sub_basis = basis_up_to(basis, sub_order);
  const std::vector<std::pair<Word, double>> terms = g.sorted_terms();

  const int n = static_cast<int>(sub_basis.size());
  Block block(n, BlockKind::localizing, constraint_id);

  std::vector<Word> adjoints;
  adjoints.reserve(sub_basis.size());
  for (const Word& v : sub_basis) adjoints.push_back(involve(v));

  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      AffineExpr& entry = block.at(i, j);
      for (const auto& [u, g_u] : terms) {
        CanonicalMoment cm =
            canonical_moment(concat(adjoints[i], concat(u, sub_basis[j])), rs);
        if (cm.word.is_identity()) {
          entry.constant += g_u * cm.sign;
        } else {
          entry.add(moment_index(cm, dict), g_u * cm.sign);
        }
      }
    }
  }
  return block;
}

std::pair<std::map<int, double>, double> translate_objective(
    const Polynomial& p, const MonomialDictionary& dict, const RuleSet& rs) {
  std::map<int, double> coeffs;
  double shift = 0.0;
  for (const auto& [w, c] : p.sorted_terms()) {
    CanonicalMoment cm = canonical_moment(w, rs);
    if (cm.word.is_identity()) {
      shift += c * cm.sign;
    } else {
      const int index = moment_index(cm, dict);
      coeffs[index] += c * cm.sign;
      if (coeffs[index] == 0.0) coeffs.erase(index);
    }
  }
  return {std::move(coeffs), shift};
}

namespace {

int half_degree_up(int degree) { return (degree + 1) / 2; }

// Replaces g by its hermitian part when needed, recording a warning.
Polynomial hermitian_part(const Polynomial& g, const char* what, int declaration,
                          std::vector<std::string>& warnings) {
  if (g.is_hermitian()) return g;
  Polynomial sym = (g + g.adjoint()) * 0.5;
  std::string note = std::string(what) + " " + std::to_string(declaration) +
                     " is not hermitian; replaced by its hermitian part";
  if (sym.is_zero()) note += ", which is zero (its localizing blocks are empty)";
  warnings.push_back(std::move(note));
  return sym;
}

}  // namespace

Relaxation get_relaxation(const Polynomial& objective,
                          const std::vector<Polynomial>& inequalities,
                          const std::vector<Polynomial>& equalities,
                          const std::vector<VariableSpec>& vars,
                          const std::vector<RewriteRule>& rules, int order,
                          int max_passes) {
  int max_degree = objective.degree();
  for (const Polynomial& g : inequalities) max_degree = std::max(max_degree, g.degree());
  for (const Polynomial& g : equalities) max_degree = std::max(max_degree, g.degree());
  if (order < 0 || 2 * order < max_degree) {
    throw OrderTooLowError(half_degree_up(max_degree));
  }

  const RuleSet rs = RuleSet::validate(rules, max_passes);

  Relaxation rel;
  rel.order = order;
  rel.basis = generate_basis(vars, order, rs);

  auto [moment, dict] = moment_matrix(rel.basis, rs);
  rel.blocks.push_back(std::move(moment));
  rel.dictionary = std::move(dict);

  int declaration = 0;
  for (const Polynomial& g : inequalities) {
    ++declaration;
    const int sub_order = rel.order - half_degree_up(g.degree());
    const Polynomial g_sym =
        hermitian_part(g, "inequality constraint", declaration, rel.warnings);
    rel.blocks.push_back(
        localizing_matrix(g_sym, sub_order, rel.basis, rel.dictionary, rs, declaration));
  }
  for (const Polynomial& h : equalities) {
    ++declaration;
    const int sub_order = rel.order - half_degree_up(h.degree());
    const Polynomial h_sym =
        hermitian_part(h, "equality constraint", declaration, rel.warnings);
    // An equality becomes the pair of inequalities +h >= 0 and -h >= 0.
    rel.blocks.push_back(
        localizing_matrix(h_sym, sub_order, rel.basis, rel.dictionary, rs, declaration));
    rel.blocks.push_back(localizing_matrix(-h_sym, sub_order, rel.basis, rel.dictionary,
                                           rs, declaration));
  }

  std::tie(rel.objective, rel.objective_shift) =
      translate_objective(objective, rel.dictionary, rs);
  rel.nvars = rel.dictionary.size();
  return rel;
}

}  // namespace ncrelax
