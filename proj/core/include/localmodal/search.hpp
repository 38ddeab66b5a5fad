#pragma once

#include "localmodal/formula.hpp"
#include "localmodal/model.hpp"
#include "localmodal/properties.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace localmodal
{

/// Shape of the models to enumerate. Worlds are named w0, w1, ...
struct EnumerationSpace
{
    std::size_t worlds = 1;
    std::vector< AgentId > agents{ "a" };
    std::vector< std::string > atoms;
    /// Theta labels whose extensions are enumerated freely.
    std::vector< std::string > labels;
    /// Properties whose extensions are set to the property's extension, so
    /// every model is harmonious for them. Their labels must not also appear
    /// in `labels`.
    std::vector< PropertySpec > harmonious;
};

/// 2^(agents*n^2 + labels*n + atoms*n), as a double so large spaces can be
/// reported.
[[nodiscard]] double model_count( const EnumerationSpace& space );

/// Every model of a space exactly once. Model i has relation bits
/// i / 2^(n*(labels+atoms)), then Delta bits, then valuation bits, so the
/// order is lexicographic in that triple. Relation bit k = a*n^2 + u*n + v
/// is the edge (u, v) of agent a; Delta and valuation bit k = j*n + w is
/// world w of the j-th label or atom.
class ModelEnumerator
{
public:
    /// Throws CapExceeded when the space has more than `cap` models.
    explicit ModelEnumerator( EnumerationSpace space, double cap = 1 << 20 );

    [[nodiscard]] std::uint64_t count() const { return _count; }
    [[nodiscard]] const EnumerationSpace& space() const { return _space; }
    [[nodiscard]] KripkeModel model_at( std::uint64_t index ) const;

    /// Calls `fn` on models [begin, end); stops early when it returns false.
    /// Returns false if stopped early.
    bool for_each( const std::function< bool( const KripkeModel&, std::uint64_t ) >& fn, std::uint64_t begin = 0,
                   std::uint64_t end = UINT64_MAX ) const;

private:
    EnumerationSpace _space;
    std::uint64_t _count;
    std::size_t _rel_bits;
    std::size_t _delta_bits;
    std::size_t _val_bits;
};

struct SearchCaps
{
    std::size_t max_worlds = 3;
    /// Upper bound on the total number of models tried over all sizes.
    double max_models = 1 << 20;
};

struct Countermodel
{
    KripkeModel model;
    WorldIndex point = 0;
};

/// The first enumerated pointed model falsifying `f`, trying sizes 1..max
/// in order and worlds in order. Agents, atoms and labels come from `f` and
/// `specs` (agent `a` if none). With `require_harmony` the spec labels take
/// their harmonious extensions; other labels are enumerated. Throws
/// CapExceeded before searching if the caps would be exceeded.
[[nodiscard]] std::optional< Countermodel > find_countermodel( const Formula& f, const std::vector< PropertySpec >& specs,
                                                               bool require_harmony, const SearchCaps& caps = {} );

struct RandomModelParams
{
    std::size_t worlds = 3;
    std::vector< AgentId > agents{ "a" };
    std::vector< std::string > atoms{ "p" };
    std::vector< std::string > labels;
    double edge_density = 0.5;
    double delta_density = 0.5;
    double valuation_density = 0.5;
};

/// Deterministic in the seed: draws edges (agent, source, target order),
/// then label extensions, then atoms, each as an independent Bernoulli
/// trial from a 64-bit Mersenne twister.
[[nodiscard]] KripkeModel random_model( std::uint64_t seed, const RandomModelParams& params );

/// A random model that is nice for every spec: each Delta is the guard's
/// extension plus a random part of the property's extension. Labels of
/// `specs` are added to those of `params`.
[[nodiscard]] KripkeModel random_nice_model( std::uint64_t seed, const RandomModelParams& params,
                                             const std::vector< PropertySpec >& specs );

} // namespace localmodal
