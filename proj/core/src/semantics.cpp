#include "localmodal/semantics.hpp"

#include "localmodal/error.hpp"

namespace localmodal
{

const WorldSet& Evaluator::extension( const Formula& f )
{
    if ( auto it = _memo.find( f ); it != _memo.end() )
        return it->second;
    WorldSet s = compute( f );
    return _memo.emplace( f, std::move( s ) ).first->second;
}

WorldSet Evaluator::compute( const Formula& f )
{
    const std::size_t n = _model.world_count();
    switch ( f.kind() )
    {
    case FormulaKind::top:
        return WorldSet( n ).set();
    case FormulaKind::atom:
    {
        const WorldSet* v = _model.find_valuation( f.name() );
        return v ? *v : WorldSet( n );
    }
    case FormulaKind::theta:
        return _model.extension( f.label() );
    case FormulaKind::negation:
        return ~extension( f.operand() );
    case FormulaKind::disjunction:
    {
        WorldSet s = extension( f.left() );
        s |= extension( f.right() );
        return s;
    }
    case FormulaKind::box:
    {
        const Frame& frame = _model.frame();
        AgentIndex a = frame.agent_index( f.agent() );
        const WorldSet& body = extension( f.operand() );
        WorldSet s( n );
        for ( WorldIndex w = 0; w < n; ++w )
        {
            bool all = true;
            for ( WorldIndex v : frame.successors( a, w ) )
                if ( !body.test( v ) )
                {
                    all = false;
                    break;
                }
            s[ w ] = all;
        }
        return s;
    }
    }
    return WorldSet( n );
}

void check_vocabulary( const KripkeModel& m, const Formula& f )
{
    for ( const auto& label : theta_labels_of( f ) )
        if ( !m.has_extension( label ) )
            throw LookupError( "model has no extension for theta label '" + label + "'" );
    for ( const auto& a : agents_of( f ) )
        if ( !m.frame().find_agent( a ) )
            throw LookupError( "unknown agent '" + a + "'" );
}

bool satisfies( const PointedModel& pm, const Formula& f ) { return satisfies( pm.model(), pm.point(), f ); }

bool satisfies( const KripkeModel& m, WorldIndex w, const Formula& f )
{
    if ( w >= m.world_count() )
        throw LookupError( "world index out of range" );
    Evaluator eval{ m };
    return eval.at( w, f );
}

bool valid_in_model( const KripkeModel& m, const Formula& f )
{
    Evaluator eval{ m };
    return eval.extension( f ).all();
}

WorldSet extension_of( const KripkeModel& m, const Formula& f )
{
    Evaluator eval{ m };
    return eval.extension( f );
}

namespace
{

bool reference( const KripkeModel& m, WorldIndex w, const Formula& f )
{
    switch ( f.kind() )
    {
    case FormulaKind::top:
        return true;
    case FormulaKind::atom:
    {
        const WorldSet* v = m.find_valuation( f.name() );
        return v && v->test( w );
    }
    case FormulaKind::theta:
        return m.extension( f.label() ).test( w );
    case FormulaKind::negation:
        return !reference( m, w, f.operand() );
    case FormulaKind::disjunction:
        return reference( m, w, f.left() ) || reference( m, w, f.right() );
    case FormulaKind::box:
        for ( WorldIndex v : m.frame().successors( m.frame().agent_index( f.agent() ), w ) )
            if ( !reference( m, v, f.operand() ) )
                return false;
        return true;
    }
    return false;
}

} // namespace

bool satisfies_reference( const KripkeModel& m, WorldIndex w, const Formula& f )
{
    check_vocabulary( m, f );
    if ( w >= m.world_count() )
        throw LookupError( "world index out of range" );
    return reference( m, w, f );
}

} // namespace localmodal
