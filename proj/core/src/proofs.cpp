#include "localmodal/proofs.hpp"

#include "localmodal/error.hpp"
#include "localmodal/print.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <unordered_map>

namespace localmodal
{

Formula expand_pseudo( const PseudoModality& s, Formula f )
{
    for ( auto it = s.rbegin(); it != s.rend(); ++it )
        f = Formula::implication( it->guard, Formula::box( it->agent, std::move( f ) ) );
    return f;
}

const PropertySpec* ProofSystem::find( const std::string& label ) const
{
    for ( const auto& s : specs )
        if ( s.label == label )
            return &s;
    return nullptr;
}

ProofSystem make_system( const std::vector< std::string >& labels, bool rule_mode, const AgentId& default_agent )
{
    ProofSystem sys;
    sys.rule_mode = rule_mode;
    for ( const auto& l : labels )
        if ( !sys.find( l ) )
            sys.specs.push_back( builtin( l, default_agent ) );
    for ( const auto& e : sys.specs )
        for ( const auto& r : sys.specs )
            if ( e.completion == CompletionRule::euclidean && r.completion == CompletionRule::reflexive
                 && e.agents.front() == r.agents.front() )
                sys.interactions.push_back( { e.label, e.agents.front(), r.label } );
    return sys;
}

void validate_system( const ProofSystem& sys )
{
    for ( const auto& i : sys.interactions )
        if ( !sys.find( i.source ) || !sys.find( i.target ) )
            throw ArgumentError( "interaction axiom mentions a disabled label" );
}

std::string_view to_string( Rule r )
{
    switch ( r )
    {
    case Rule::taut: return "taut";
    case Rule::axiom_k: return "K";
    case Rule::nec: return "nec";
    case Rule::mp: return "mp";
    case Rule::elim: return "elim";
    case Rule::triv_intro: return "trivintro";
    case Rule::interact: return "interact";
    case Rule::intro: return "intro";
    }
    return "taut";
}

Rule parse_rule( std::string_view name )
{
    std::string s;
    for ( char c : name )
        s.push_back( static_cast< char >( std::tolower( static_cast< unsigned char >( c ) ) ) );
    static const std::map< std::string, Rule, std::less<> > names{
        { "taut", Rule::taut },   { "k", Rule::axiom_k },        { "axk", Rule::axiom_k },
        { "nec", Rule::nec },     { "mp", Rule::mp },            { "elim", Rule::elim },
        { "trivintro", Rule::triv_intro }, { "interact", Rule::interact }, { "intro", Rule::intro },
        { "introrule", Rule::intro } };
    if ( auto it = names.find( s ); it != names.end() )
        return it->second;
    throw LookupError( "unknown rule '" + std::string( name ) + "'" );
}

std::string_view to_string( ProofFailure f )
{
    switch ( f )
    {
    case ProofFailure::none: return "none";
    case ProofFailure::bad_reference: return "bad reference";
    case ProofFailure::shape_mismatch: return "shape mismatch";
    case ProofFailure::not_enabled: return "not enabled";
    case ProofFailure::freshness: return "freshness violation";
    case ProofFailure::not_tautology: return "skeleton not tautological";
    case ProofFailure::budget: return "tautology budget exceeded";
    }
    return "none";
}

TautologyResult check_tautology( const Formula& f, std::size_t max_atoms )
{
    std::unordered_map< Formula, std::size_t > vars;
    // Collect abstraction variables first so the budget is known up front.
    auto collect = [ & ]( auto&& self, const Formula& g ) -> void {
        switch ( g.kind() )
        {
        case FormulaKind::top: return;
        case FormulaKind::negation: self( self, g.operand() ); return;
        case FormulaKind::disjunction:
            self( self, g.left() );
            self( self, g.right() );
            return;
        default: vars.emplace( g, vars.size() );
        }
    };
    collect( collect, f );
    if ( vars.size() > max_atoms || vars.size() >= 63 )
        return TautologyResult::budget_exceeded;

    auto eval = [ & ]( auto&& self, const Formula& g, std::uint64_t bits ) -> bool {
        switch ( g.kind() )
        {
        case FormulaKind::top: return true;
        case FormulaKind::negation: return !self( self, g.operand(), bits );
        case FormulaKind::disjunction: return self( self, g.left(), bits ) || self( self, g.right(), bits );
        default: return ( ( bits >> vars.at( g ) ) & 1U ) != 0;
        }
    };
    const std::uint64_t rows = std::uint64_t{ 1 } << vars.size();
    for ( std::uint64_t bits = 0; bits < rows; ++bits )
        if ( !eval( eval, f, bits ) )
            return TautologyResult::not_tautology;
    return TautologyResult::tautology;
}

namespace
{

bool match_into( const Formula& pat, const Formula& f, std::map< std::string, Formula >& bind )
{
    if ( pat.kind() == FormulaKind::atom && Schema::is_placeholder( pat.name() ) )
    {
        auto [ it, fresh ] = bind.emplace( pat.name(), f );
        return fresh || it->second == f;
    }
    if ( pat.kind() != f.kind() )
        return false;
    switch ( pat.kind() )
    {
    case FormulaKind::top: return true;
    case FormulaKind::atom:
    case FormulaKind::theta: return pat.name() == f.name();
    case FormulaKind::negation: return match_into( pat.operand(), f.operand(), bind );
    case FormulaKind::box: return pat.agent() == f.agent() && match_into( pat.operand(), f.operand(), bind );
    case FormulaKind::disjunction:
        return match_into( pat.left(), f.left(), bind ) && match_into( pat.right(), f.right(), bind );
    }
    return false;
}

struct line_error
{
    ProofFailure failure;
    std::string message;
};

class checker
{
public:
    checker( const Proof& p, const ProofSystem& sys ) : _proof{ p }, _sys{ sys } {}

    ProofVerdict run()
    {
        for ( std::size_t i = 0; i < _proof.lines.size(); ++i )
            if ( auto err = check( i ) )
                return ProofVerdict{ false, i + 1, err->failure, err->message };
        return {};
    }

private:
    using result = std::optional< line_error >;

    static result shape( std::string msg ) { return line_error{ ProofFailure::shape_mismatch, std::move( msg ) }; }

    const Formula& ref( std::size_t i, std::size_t k ) const { return _proof.lines[ _proof.lines[ i ].refs[ k ] - 1 ].formula; }

    result check_refs( std::size_t i, std::size_t want ) const
    {
        const auto& refs = _proof.lines[ i ].refs;
        if ( refs.size() != want )
            return line_error{ ProofFailure::bad_reference, "expected " + std::to_string( want ) + " reference(s), got "
                                                                + std::to_string( refs.size() ) };
        for ( std::size_t r : refs )
            if ( r < 1 || r > i )
                return line_error{ ProofFailure::bad_reference,
                                   "reference " + std::to_string( r ) + " is not an earlier line" };
        return std::nullopt;
    }

    result check_agent( const ProofLine& l, const AgentId& actual ) const
    {
        if ( l.agent && *l.agent != actual )
            return shape( "agent " + *l.agent + " does not match the formula's agent " + actual );
        return std::nullopt;
    }

    const PropertySpec* spec_for( const Formula& theta ) const
    {
        return theta.kind() == FormulaKind::theta ? _sys.find( theta.label() ) : nullptr;
    }

    result check( std::size_t i ) const
    {
        const ProofLine& l = _proof.lines[ i ];
        const Formula& f = l.formula;
        switch ( l.rule )
        {
        case Rule::taut:
        {
            if ( auto e = check_refs( i, 0 ) )
                return e;
            switch ( check_tautology( f ) )
            {
            case TautologyResult::tautology: return std::nullopt;
            case TautologyResult::not_tautology:
                return line_error{ ProofFailure::not_tautology, "propositional skeleton is not a tautology" };
            case TautologyResult::budget_exceeded:
                return line_error{ ProofFailure::budget, "skeleton has more than 16 abstracted atoms" };
            }
            return std::nullopt;
        }
        case Rule::axiom_k:
        {
            if ( auto e = check_refs( i, 0 ) )
                return e;
            auto top = match_implication( f );
            if ( !top || top->first.kind() != FormulaKind::box )
                return shape( "not an instance of K" );
            const AgentId& a = top->first.agent();
            auto inner = match_implication( top->first.operand() );
            if ( !inner )
                return shape( "not an instance of K" );
            Formula want = Formula::implication(
                Formula::box( a, Formula::implication( inner->first, inner->second ) ),
                Formula::implication( Formula::box( a, inner->first ), Formula::box( a, inner->second ) ) );
            if ( want != f )
                return shape( "not an instance of K" );
            return check_agent( l, a );
        }
        case Rule::nec:
        {
            if ( auto e = check_refs( i, 1 ) )
                return e;
            if ( f.kind() != FormulaKind::box || f.operand() != ref( i, 0 ) )
                return shape( "formula is not a box of line " + std::to_string( l.refs[ 0 ] ) );
            return check_agent( l, f.agent() );
        }
        case Rule::mp:
        {
            if ( auto e = check_refs( i, 2 ) )
                return e;
            if ( ref( i, 0 ) != Formula::implication( ref( i, 1 ), f ) )
                return shape( "line " + std::to_string( l.refs[ 0 ] ) + " is not line " + std::to_string( l.refs[ 1 ] )
                              + " -> this formula" );
            return std::nullopt;
        }
        case Rule::elim:
        {
            if ( auto e = check_refs( i, 0 ) )
                return e;
            auto imp = match_implication( f );
            const PropertySpec* spec = imp ? spec_for( imp->first ) : nullptr;
            if ( !imp || imp->first.kind() != FormulaKind::theta )
                return shape( "elimination axioms have the form theta -> schema" );
            if ( !spec || !spec->elimination_schema )
                return line_error{ ProofFailure::not_enabled, "property '" + imp->first.label() + "' is not enabled" };
            if ( l.args.empty() )
            {
                if ( !match_schema( *spec->elimination_schema, f ) )
                    return shape( "not an instance of the elimination axiom for '" + spec->label + "'" );
                return std::nullopt;
            }
            if ( l.args.size() != spec->elimination_schema->arity() )
                return shape( "elimination axiom for '" + spec->label + "' takes "
                              + std::to_string( spec->elimination_schema->arity() ) + " argument(s)" );
            if ( instantiate( *spec->elimination_schema, l.args ) != f )
                return shape( "formula differs from the elimination instance for the given arguments" );
            return std::nullopt;
        }
        case Rule::triv_intro:
        {
            if ( auto e = check_refs( i, 0 ) )
                return e;
            auto imp = match_implication( f );
            if ( !imp || imp->second.kind() != FormulaKind::theta )
                return shape( "trivial introduction axioms have the form guard -> theta" );
            const PropertySpec* spec = spec_for( imp->second );
            if ( !spec )
                return line_error{ ProofFailure::not_enabled, "property '" + imp->second.label() + "' is not enabled" };
            if ( !spec->trivial_guard )
                return shape( "property '" + spec->label + "' has no trivial introduction axiom" );
            if ( imp->first != *spec->trivial_guard )
                return shape( "antecedent is not the guard " + print_formula( *spec->trivial_guard ) );
            return std::nullopt;
        }
        case Rule::interact:
        {
            if ( auto e = check_refs( i, 0 ) )
                return e;
            auto imp = match_implication( f );
            if ( !imp || imp->first.kind() != FormulaKind::theta || imp->second.kind() != FormulaKind::box
                 || imp->second.operand().kind() != FormulaKind::theta )
                return shape( "interaction axioms have the form theta -> [a]theta" );
            InteractionAxiom ax{ imp->first.label(), imp->second.agent(), imp->second.operand().label() };
            if ( std::find( _sys.interactions.begin(), _sys.interactions.end(), ax ) == _sys.interactions.end() )
                return line_error{ ProofFailure::not_enabled, "interaction axiom is not part of the system" };
            return check_agent( l, ax.agent );
        }
        case Rule::intro:
            return check_intro( i );
        }
        return std::nullopt;
    }

    result check_intro( std::size_t i ) const
    {
        const ProofLine& l = _proof.lines[ i ];
        if ( !_sys.rule_mode )
            return line_error{ ProofFailure::not_enabled, "the introduction rule is not enabled" };
        if ( auto e = check_refs( i, 1 ) )
            return e;
        // Peel the pseudo-modality off the conclusion to find the label.
        Formula core = l.formula;
        for ( const auto& step : l.pseudo )
        {
            auto imp = match_implication( core );
            if ( !imp || imp->first != step.guard || imp->second.kind() != FormulaKind::box
                 || imp->second.agent() != step.agent )
                return shape( "conclusion does not start with the declared pseudo-modality" );
            core = imp->second.operand();
        }
        const PropertySpec* spec = spec_for( core );
        if ( core.kind() != FormulaKind::theta )
            return shape( "conclusion is not [s]theta" );
        if ( !spec || !spec->defining_schema )
            return line_error{ ProofFailure::not_enabled, "property '" + core.label() + "' is not enabled" };
        const Schema& schema = *spec->defining_schema;
        if ( l.fresh.size() != schema.arity() )
            return shape( "defining schema for '" + spec->label + "' needs " + std::to_string( schema.arity() )
                          + " fresh atom(s)" );
        std::set< std::string > distinct( l.fresh.begin(), l.fresh.end() );
        if ( distinct.size() != l.fresh.size() )
            return line_error{ ProofFailure::freshness, "fresh atoms must be distinct" };
        for ( const auto& step : l.pseudo )
        {
            auto used = atoms_of( step.guard );
            for ( const auto& p : l.fresh )
                if ( used.contains( p ) )
                    return line_error{ ProofFailure::freshness,
                                       "fresh atom '" + p + "' occurs in guard " + print_formula( step.guard ) };
        }
        std::vector< Formula > atoms;
        for ( const auto& p : l.fresh )
            atoms.push_back( Formula::atom( p ) );
        if ( ref( i, 0 ) != expand_pseudo( l.pseudo, instantiate( schema, atoms ) ) )
            return shape( "line " + std::to_string( l.refs[ 0 ] ) + " is not [s] applied to the defining schema" );
        return std::nullopt;
    }

    const Proof& _proof;
    const ProofSystem& _sys;
};

void tuples( std::size_t arity, const std::vector< Formula >& args, std::vector< Formula >& cur,
             std::vector< std::vector< Formula > >& out )
{
    if ( cur.size() == arity )
    {
        out.push_back( cur );
        return;
    }
    for ( const auto& a : args )
    {
        cur.push_back( a );
        tuples( arity, args, cur, out );
        cur.pop_back();
    }
}

} // namespace

std::optional< std::vector< Formula > > match_schema( const Schema& s, const Formula& f )
{
    std::map< std::string, Formula > bind;
    if ( !match_into( s.body(), f, bind ) )
        return std::nullopt;
    std::vector< Formula > out;
    for ( std::size_t i = 1; i <= s.arity(); ++i )
        out.push_back( bind.at( Schema::placeholder( i ) ) );
    return out;
}

ProofVerdict check_proof( const Proof& p, const ProofSystem& sys )
{
    validate_system( sys );
    return checker{ p, sys }.run();
}

std::vector< Formula > axiom_instances( const ProofSystem& sys, const std::vector< Formula >& args )
{
    std::vector< Formula > out;
    for ( const auto& spec : sys.specs )
    {
        if ( spec.elimination_schema )
        {
            std::vector< std::vector< Formula > > all;
            std::vector< Formula > cur;
            tuples( spec.elimination_schema->arity(), args, cur, all );
            for ( const auto& t : all )
                out.push_back( instantiate( *spec.elimination_schema, t ) );
        }
        if ( spec.trivial_guard )
            out.push_back( Formula::implication( *spec.trivial_guard, spec.theta() ) );
    }
    for ( const auto& ax : sys.interactions )
    {
        if ( !sys.find( ax.source ) || !sys.find( ax.target ) )
            throw LookupError( "interaction axiom mentions a disabled label" );
        out.push_back( Formula::implication( Formula::theta( ax.source ),
                                             Formula::box( ax.agent, Formula::theta( ax.target ) ) ) );
    }
    return out;
}

} // namespace localmodal
