#include "localmodal/harmony.hpp"

#include <json.hpp>

namespace localmodal
{

std::string report_metadata( const KripkeModel& source, const HarmonizationReport& r )
{
    nlohmann::ordered_json j;
    j[ "root" ] = r.result.world( r.root );
    j[ "depth" ] = r.depth;
    j[ "interior_radius" ] = r.interior_radius;
    j[ "iterations" ] = r.iterations;
    j[ "edges_added" ] = r.edges_added;
    j[ "worlds_copied" ] = r.worlds_copied;
    nlohmann::ordered_json originals = nlohmann::ordered_json::object();
    nlohmann::ordered_json depths = nlohmann::ordered_json::object();
    for ( WorldIndex w = 0; w < r.result.world_count(); ++w )
    {
        originals[ r.result.world( w ) ] = source.world( r.originals[ w ] );
        if ( r.tree_depth[ w ] )
            depths[ r.result.world( w ) ] = *r.tree_depth[ w ];
    }
    j[ "originals" ] = std::move( originals );
    j[ "tree_depth" ] = std::move( depths );
    return j.dump( 2 ) + "\n";
}

} // namespace localmodal
