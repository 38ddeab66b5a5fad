#pragma once

#include "localmodal/formula.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace localmodal
{

using WorldIndex = std::size_t;
using AgentIndex = std::size_t;

/// Subset of a model's worlds, indexed by WorldIndex.
using WorldSet = boost::dynamic_bitset<>;

/// Worlds, agents and one accessibility relation per agent.
///
/// World ids are stable tokens kept in insertion order; all indices refer to
/// that order. Successor lists are kept sorted by index.
class Frame
{
public:
    Frame() = default;
    Frame( std::vector< std::string > worlds, std::vector< AgentId > agents );

    [[nodiscard]] std::size_t world_count() const { return _worlds.size(); }
    [[nodiscard]] const std::vector< std::string >& worlds() const { return _worlds; }
    [[nodiscard]] const std::string& world( WorldIndex w ) const { return _worlds.at( w ); }
    [[nodiscard]] std::optional< WorldIndex > find_world( const std::string& id ) const;
    /// Throws LookupError for an unknown id.
    [[nodiscard]] WorldIndex world_index( const std::string& id ) const;

    [[nodiscard]] std::size_t agent_count() const { return _agents.size(); }
    [[nodiscard]] const std::vector< AgentId >& agents() const { return _agents; }
    [[nodiscard]] std::optional< AgentIndex > find_agent( const AgentId& a ) const;
    [[nodiscard]] AgentIndex agent_index( const AgentId& a ) const;

    /// Appends a world; throws ValidationError on a duplicate or empty id.
    WorldIndex add_world( std::string id );
    AgentIndex add_agent( AgentId a );

    /// Returns false when the edge was already present.
    bool add_edge( AgentIndex a, WorldIndex from, WorldIndex to );
    void clear_edges( AgentIndex a );
    [[nodiscard]] bool has_edge( AgentIndex a, WorldIndex from, WorldIndex to ) const;
    [[nodiscard]] const std::vector< WorldIndex >& successors( AgentIndex a, WorldIndex w ) const
    {
        return _succ[ a ][ w ];
    }
    [[nodiscard]] std::size_t edge_count() const;
    [[nodiscard]] std::size_t edge_count( AgentIndex a ) const;

    friend bool operator==( const Frame& lhs, const Frame& rhs );

private:
    std::vector< std::string > _worlds;
    std::unordered_map< std::string, WorldIndex > _world_index;
    std::vector< AgentId > _agents;
    std::vector< std::vector< std::vector< WorldIndex > > > _succ; // [agent][world]
};

/// Finite Kripke model: a frame plus theta extensions and a valuation.
/// Atoms absent from the valuation are false everywhere.
class KripkeModel
{
public:
    KripkeModel() = default;
    explicit KripkeModel( Frame frame ) : _frame{ std::move( frame ) } {}
    KripkeModel( std::vector< std::string > worlds, std::vector< AgentId > agents )
        : _frame{ std::move( worlds ), std::move( agents ) }
    {}

    [[nodiscard]] const Frame& frame() const { return _frame; }
    [[nodiscard]] Frame& frame() { return _frame; }

    [[nodiscard]] std::size_t world_count() const { return _frame.world_count(); }
    [[nodiscard]] const std::string& world( WorldIndex w ) const { return _frame.world( w ); }
    [[nodiscard]] WorldIndex world_index( const std::string& id ) const { return _frame.world_index( id ); }

    /// Appends a world absent from every extension and valuation.
    WorldIndex add_world( std::string id );

    [[nodiscard]] WorldSet empty_set() const { return WorldSet( world_count() ); }

    void set_extension( const std::string& label, WorldSet worlds );
    [[nodiscard]] bool has_extension( const std::string& label ) const { return _theta.contains( label ); }
    /// Throws LookupError for an unknown label.
    [[nodiscard]] const WorldSet& extension( const std::string& label ) const;
    [[nodiscard]] const std::map< std::string, WorldSet >& extensions() const { return _theta; }

    void set_valuation( const std::string& atom, WorldSet worlds );
    [[nodiscard]] const WorldSet* find_valuation( const std::string& atom ) const;
    [[nodiscard]] const std::map< std::string, WorldSet >& valuation() const { return _valuation; }

    friend bool operator==( const KripkeModel& lhs, const KripkeModel& rhs ) = default;

private:
    Frame _frame;
    std::map< std::string, WorldSet > _theta;
    std::map< std::string, WorldSet > _valuation;
};

/// Non-owning view of a model together with a designated world. The model
/// must outlive the view.
class PointedModel
{
public:
    PointedModel( const KripkeModel& model, WorldIndex point );
    PointedModel( const KripkeModel& model, const std::string& point );

    [[nodiscard]] const KripkeModel& model() const { return *_model; }
    [[nodiscard]] WorldIndex point() const { return _point; }

private:
    const KripkeModel* _model;
    WorldIndex _point;
};

/// Ids of R_a(w) in world order. Throws LookupError for unknown world or agent.
[[nodiscard]] std::vector< std::string > successors( const KripkeModel& m, const AgentId& a, const std::string& w );

[[nodiscard]] Frame underlying_frame( const KripkeModel& m );

/// Ids of the worlds in `s`, in world order.
[[nodiscard]] std::vector< std::string > world_names( const Frame& f, const WorldSet& s );

} // namespace localmodal
