#pragma once

#include "localmodal/formula.hpp"
#include "localmodal/model.hpp"

#include <unordered_map>

namespace localmodal
{

/// Bottom-up model checker. Truth sets of every subformula are memoized
/// (structurally), so one evaluator can be reused across many formulas on
/// the same model as long as the model is not modified.
class Evaluator
{
public:
    explicit Evaluator( const KripkeModel& model ) : _model{ model } {}

    /// {w | M,w |= f}. Throws LookupError for an unknown theta label or agent.
    [[nodiscard]] const WorldSet& extension( const Formula& f );

    [[nodiscard]] bool at( WorldIndex w, const Formula& f ) { return extension( f ).test( w ); }

    void clear() { _memo.clear(); }

private:
    WorldSet compute( const Formula& f );

    const KripkeModel& _model;
    std::unordered_map< Formula, WorldSet > _memo;
};

/// Throws LookupError unless every theta label and agent of `f` is known to `m`.
void check_vocabulary( const KripkeModel& m, const Formula& f );

[[nodiscard]] bool satisfies( const PointedModel& pm, const Formula& f );
[[nodiscard]] bool satisfies( const KripkeModel& m, WorldIndex w, const Formula& f );
[[nodiscard]] bool valid_in_model( const KripkeModel& m, const Formula& f );
[[nodiscard]] WorldSet extension_of( const KripkeModel& m, const Formula& f );

/// Direct recursive reading of the satisfaction clauses, without
/// memoization. Used to cross-check the evaluator.
[[nodiscard]] bool satisfies_reference( const KripkeModel& m, WorldIndex w, const Formula& f );

} // namespace localmodal
