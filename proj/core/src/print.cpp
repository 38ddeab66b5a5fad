#include "localmodal/print.hpp"

namespace localmodal
{

namespace
{

// Binding strength; a child printed below its context's strength is
// parenthesized.
enum prec : int
{
    quantifier = 0,
    iff = 1,
    imp = 2,
    disj = 3,
    conj = 4,
    unary = 5,
    atomic = 6
};

struct rendered
{
    std::string text;
    int strength;
};

std::string in_context( const rendered& r, int context )
{
    return r.strength < context ? "(" + r.text + ")" : r.text;
}

std::optional< std::pair< Formula, Formula > > match_equivalence( const Formula& f )
{
    auto c = match_conjunction( f );
    if ( !c )
        return std::nullopt;
    auto forward = match_implication( c->first );
    auto backward = match_implication( c->second );
    if ( !forward || !backward || !( forward->first == backward->second ) || !( forward->second == backward->first ) )
        return std::nullopt;
    return forward;
}

rendered render( const Formula& f )
{
    switch ( f.kind() )
    {
    case FormulaKind::top:
        return { "T", atomic };
    case FormulaKind::atom:
        return { f.name(), atomic };
    case FormulaKind::theta:
        return { "theta_" + f.label(), atomic };
    case FormulaKind::box:
        return { "[" + f.agent() + "]" + in_context( render( f.operand() ), unary ), unary };
    case FormulaKind::negation:
    {
        if ( f.operand().kind() == FormulaKind::top )
            return { "F", atomic };
        if ( auto e = match_equivalence( f ) )
            return { in_context( render( e->first ), imp ) + " <-> " + in_context( render( e->second ), iff ), iff };
        if ( auto d = match_diamond( f ) )
            return { "<" + d->first + ">" + in_context( render( d->second ), unary ), unary };
        if ( auto c = match_conjunction( f ) )
            return { in_context( render( c->first ), conj ) + " & " + in_context( render( c->second ), unary ), conj };
        return { "~" + in_context( render( f.operand() ), unary ), unary };
    }
    case FormulaKind::disjunction:
    {
        if ( auto i = match_implication( f ) )
            return { in_context( render( i->first ), disj ) + " -> " + in_context( render( i->second ), imp ), imp };
        return { in_context( render( f.left() ), disj ) + " | " + in_context( render( f.right() ), conj ), disj };
    }
    }
    return { "", atomic };
}

rendered render( const FoFormula& f );

std::string quantifier_body( const FoFormula& body )
{
    rendered r = render( body );
    if ( r.strength == quantifier || r.strength == atomic )
        return " " + r.text;
    return " (" + r.text + ")";
}

rendered render( const FoFormula& f )
{
    switch ( f.kind() )
    {
    case FoKind::relation:
        return { "R_" + f.agent() + "(" + f.source() + "," + f.target() + ")", atomic };
    case FoKind::equality:
        return { f.source() + "=" + f.target(), atomic };
    case FoKind::forall:
        return { "forall " + f.variable() + quantifier_body( f.body() ), quantifier };
    case FoKind::negation:
    {
        if ( auto e = match_exists( f ) )
            return { "exists " + e->first + quantifier_body( e->second ), quantifier };
        if ( auto c = match_conjunction( f ) )
            return { in_context( render( c->first ), conj ) + " & " + in_context( render( c->second ), unary ), conj };
        return { "~" + in_context( render( f.operand() ), unary ), unary };
    }
    case FoKind::disjunction:
    {
        if ( auto i = match_implication( f ) )
            return { in_context( render( i->first ), disj ) + " -> " + in_context( render( i->second ), imp ), imp };
        return { in_context( render( f.left() ), disj ) + " | " + in_context( render( f.right() ), conj ), disj };
    }
    }
    return { "", atomic };
}

} // namespace

std::string print_formula( const Formula& f ) { return render( f ).text; }

std::string print_fo_formula( const FoFormula& f ) { return render( f ).text; }

std::string print_property( const LocalProperty& p ) { return print_fo_formula( p.body() ); }

} // namespace localmodal
