#ifndef STALLINGS_HALL_HPP_
#define STALLINGS_HALL_HPP_

// Completion of a core to a finite-index core avoiding a finite set of words.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "core.hpp"
#include "error.hpp"
#include "word.hpp"

namespace stallings {

  //! A complete core containing \p core whose subgroup contains none of the
  //! words in \p avoid.
  //!
  //! The partial lifts of the avoid words at the basepoint are grown as
  //! hanging chains, then for each generator the vertices missing an outgoing
  //! edge are matched with those missing an incoming one (both sorted by id,
  //! the matching shifted by k = 0, 1, ... until the result checks out).  Each
  //! avoid word then lifts inside the grown graph to a path that does not
  //! close, and completing only adds edges, so the first matching already
  //! works; the result is verified regardless.
  inline LabeledCore hall_complete(LabeledCore const&       core,
                                   std::vector<Word> const& avoid) {
    std::size_t const r = core.ambient_rank();
    for (Word const& w : avoid) {
      check_alphabet(w, r);
      if (w.empty()) {
        throw DomainError("avoid word is empty");
      }
      if (!is_reduced(w)) {
        throw DomainError("avoid word " + to_string(w) + " is not reduced");
      }
      if (contains(core, w)) {
        throw DomainError("avoid word " + to_string(w)
                          + " already lies in the subgroup");
      }
    }
    auto grown = detail::RawTable::of(core);
    for (Word const& w : avoid) {
      grown.extend(LabeledCore::base(), w);
    }

    std::vector<std::vector<std::size_t>> out(r), in(r);
    std::size_t                           longest = 1;
    for (std::size_t g = 0; g < r; ++g) {
      for (std::size_t v = 0; v < grown.n; ++v) {
        if (grown.target(v, 2 * g) == no_vertex) {
          out[g].push_back(v);
        }
        if (grown.target(v, 2 * g + 1) == no_vertex) {
          in[g].push_back(v);
        }
      }
      longest = std::max(longest, out[g].size());
    }

    auto const basis = schreier_basis(core);
    for (std::size_t k = 0; k < longest; ++k) {
      auto trial = grown;
      for (std::size_t g = 0; g < r; ++g) {
        std::size_t const m = out[g].size();
        for (std::size_t i = 0; i < m; ++i) {
          trial.set(out[g][i], 2 * g, in[g][(i + k) % m]);
        }
      }
      auto done = LabeledCore::from_table(r, trial.n, LabeledCore::base(),
                                          std::move(trial.t));
      bool ok = done.is_complete();
      for (Word const& b : basis) {
        ok = ok && contains(done, b);
      }
      for (Word const& w : avoid) {
        ok = ok && !contains(done, w);
      }
      if (ok) {
        return done;
      }
    }
    throw std::logic_error("no completion avoids every word");
  }

}  // namespace stallings

#endif  // STALLINGS_HALL_HPP_
