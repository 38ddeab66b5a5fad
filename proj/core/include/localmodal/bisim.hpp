#pragma once

#include "localmodal/model.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace localmodal
{

struct BisimOptions
{
    /// When false, theta extensions must agree like atoms.
    bool ignore_theta = false;
};

/// A relation between the worlds of two models, stored as one row per
/// world of the first model.
class WorldRelation
{
public:
    WorldRelation() = default;
    WorldRelation( std::size_t left, std::size_t right );

    [[nodiscard]] std::size_t left_size() const { return _rows.size(); }
    [[nodiscard]] std::size_t right_size() const { return _right; }
    [[nodiscard]] bool contains( WorldIndex l, WorldIndex r ) const { return _rows[ l ].test( r ); }
    void set( WorldIndex l, WorldIndex r, bool value = true ) { _rows[ l ][ r ] = value; }
    [[nodiscard]] const WorldSet& row( WorldIndex l ) const { return _rows[ l ]; }
    [[nodiscard]] std::size_t size() const;
    /// Pairs in (left, right) index order.
    [[nodiscard]] std::vector< std::pair< WorldIndex, WorldIndex > > pairs() const;

    friend bool operator==( const WorldRelation&, const WorldRelation& ) = default;

private:
    std::vector< WorldSet > _rows;
    std::size_t _right = 0;
};

/// Pairs agreeing on every atom (and theta label unless ignored). Atoms,
/// labels and agents missing from one model count as empty there.
[[nodiscard]] WorldRelation atomic_agreement( const KripkeModel& m1, const KripkeModel& m2,
                                              const BisimOptions& options = {} );

/// The union of all bisimulations between m1 and m2, by greatest-fixpoint
/// refinement of atomic agreement.
[[nodiscard]] WorldRelation largest_bisimulation( const KripkeModel& m1, const KripkeModel& m2,
                                                  const BisimOptions& options = {} );

/// Bisimilarity classes of one model by partition refinement; worlds get
/// the same block number iff they are bisimilar. Blocks are numbered in
/// order of their first world.
[[nodiscard]] std::vector< std::size_t > bisimulation_partition( const KripkeModel& m,
                                                                 const BisimOptions& options = {} );

[[nodiscard]] bool bisimilar( const PointedModel& m1, const PointedModel& m2, const BisimOptions& options = {} );

/// Stratified bisimilarity: level 0 is atomic agreement, level k+1 keeps the
/// level-k pairs satisfying Forth and Back into level k.
[[nodiscard]] WorldRelation d_bisimulation( const KripkeModel& m1, const KripkeModel& m2, std::size_t d,
                                            const BisimOptions& options = {} );

[[nodiscard]] bool d_bisimilar( const PointedModel& m1, const PointedModel& m2, std::size_t d,
                                const BisimOptions& options = {} );

/// Checks Atoms, Forth and Back for every pair of `r`.
[[nodiscard]] bool is_bisimulation( const KripkeModel& m1, const KripkeModel& m2, const WorldRelation& r,
                                    const BisimOptions& options = {} );

/// Sorted [world1, world2] id pairs.
[[nodiscard]] std::vector< std::pair< std::string, std::string > >
relation_ids( const KripkeModel& m1, const KripkeModel& m2, const WorldRelation& r );

} // namespace localmodal
