#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "families.hpp"

namespace lnt {

// The eight inductive forms of the reduction argument. Each form's instance
// at single variables is exactly the matching family's generator, so the
// base case of the reduction is a one-term certificate.
enum class FormId : int {
  COMM5,
  P33,
  P43,
  P42,
  P322,
  C2211,
  P2212,
  P2222,
};

inline const char* form_name(FormId f) {
  switch (f) {
    case FormId::COMM5: return "COMM5";
    case FormId::P33: return "P33";
    case FormId::P43: return "P43";
    case FormId::P42: return "P42";
    case FormId::P322: return "P322";
    case FormId::C2211: return "C2211";
    case FormId::P2212: return "P2212";
    case FormId::P2222: return "P2222";
  }
  throw std::logic_error("unknown form");
}

inline FormId form_from_name(const std::string& s) {
  if (s == "COMM5") return FormId::COMM5;
  if (s == "P33") return FormId::P33;
  if (s == "P43") return FormId::P43;
  if (s == "P42") return FormId::P42;
  if (s == "P322") return FormId::P322;
  if (s == "C2211") return FormId::C2211;
  if (s == "P2212") return FormId::P2212;
  if (s == "P2222") return FormId::P2222;
  throw std::invalid_argument("unknown form name: " + s);
}

inline Family form_family(FormId f) {
  switch (f) {
    case FormId::COMM5: return Family::F1;
    case FormId::P33: return Family::F2;
    case FormId::P43: return Family::F3;
    case FormId::P42: return Family::F4;
    case FormId::P322: return Family::F5;
    case FormId::C2211: return Family::F6;
    case FormId::P2212: return Family::F7;
    case FormId::P2222: return Family::F8;
  }
  throw std::logic_error("unknown form");
}

inline int form_arity(FormId f) { return family_arity(form_family(f)); }

// Position of the form in the dependency order of the induction: an
// equal-degree recursive call may only go to a form of strictly smaller
// rank. P2222 is handled first (rank 0), COMM5 last (rank 7).
inline int form_rank(FormId f) {
  switch (f) {
    case FormId::P2222: return 0;
    case FormId::P322: return 1;
    case FormId::P2212: return 2;
    case FormId::P43: return 3;
    case FormId::C2211: return 4;
    case FormId::P33: return 5;
    case FormId::P42: return 6;
    case FormId::COMM5: return 7;
  }
  throw std::logic_error("unknown form");
}

inline const std::vector<FormId>& all_forms() {
  static const std::vector<FormId> forms = {
      FormId::COMM5, FormId::P33,   FormId::P43,   FormId::P42,
      FormId::P322,  FormId::C2211, FormId::P2212, FormId::P2222,
  };
  return forms;
}

template <class R>
Poly<R> form_value(FormId f, const std::vector<Poly<R>>& args) {
  return family_poly(form_family(f), args);
}

template <class R>
Poly<R> form_word_value(const R& ring, FormId f, const std::vector<Word>& ws) {
  return family_word_poly(ring, form_family(f), ws);
}

}  // namespace lnt
