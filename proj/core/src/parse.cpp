#include "localmodal/parse.hpp"

#include "localmodal/error.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace localmodal
{

namespace
{

enum class tok
{
    ident,
    lparen,
    rparen,
    lbrack,
    rbrack,
    langle,
    rangle,
    arrow,
    iff,
    neg,
    conj,
    disj,
    comma,
    equals,
    end
};

struct token
{
    tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

bool ident_char( char c ) { return std::isalnum( static_cast< unsigned char >( c ) ) != 0 || c == '_'; }

std::vector< token > lex( std::string_view text )
{
    std::vector< token > out;
    std::size_t line = 1, column = 1;
    std::size_t i = 0;
    auto advance = [ & ]( std::size_t n ) {
        for ( std::size_t k = 0; k < n; ++k, ++i )
        {
            if ( text[ i ] == '\n' )
            {
                ++line;
                column = 1;
            }
            else
                ++column;
        }
    };
    auto emit = [ & ]( tok kind, std::size_t len ) {
        out.push_back( { kind, std::string( text.substr( i, len ) ), line, column } );
        advance( len );
    };

    while ( i < text.size() )
    {
        char c = text[ i ];
        if ( std::isspace( static_cast< unsigned char >( c ) ) )
        {
            advance( 1 );
            continue;
        }
        if ( c == '#' )
        {
            while ( i < text.size() && text[ i ] != '\n' )
                advance( 1 );
            continue;
        }
        if ( ident_char( c ) )
        {
            std::size_t j = i;
            while ( j < text.size() && ident_char( text[ j ] ) )
                ++j;
            emit( tok::ident, j - i );
            continue;
        }
        switch ( c )
        {
        case '(': emit( tok::lparen, 1 ); continue;
        case ')': emit( tok::rparen, 1 ); continue;
        case '[': emit( tok::lbrack, 1 ); continue;
        case ']': emit( tok::rbrack, 1 ); continue;
        case '>': emit( tok::rangle, 1 ); continue;
        case '~': emit( tok::neg, 1 ); continue;
        case '&': emit( tok::conj, 1 ); continue;
        case '|': emit( tok::disj, 1 ); continue;
        case ',': emit( tok::comma, 1 ); continue;
        case '=': emit( tok::equals, 1 ); continue;
        case '<':
            if ( text.substr( i, 3 ) == "<->" )
                emit( tok::iff, 3 );
            else
                emit( tok::langle, 1 );
            continue;
        case '-':
            if ( text.substr( i, 2 ) == "->" )
            {
                emit( tok::arrow, 2 );
                continue;
            }
            throw ParseError( "expected '->'", line, column );
        case '\\':
            throw ParseError( "unknown escape '\\" + std::string( text.substr( i + 1, 1 ) ) + "'", line, column );
        default:
            throw ParseError( std::string( "unexpected character '" ) + c + "'", line, column );
        }
    }
    out.push_back( { tok::end, "", line, column } );
    return out;
}

std::string describe( const token& t )
{
    return t.kind == tok::end ? std::string( "end of input" ) : "'" + t.text + "'";
}

class parser_base
{
public:
    parser_base( std::string_view text, const ParseOptions& options ) : _tokens{ lex( text ) }, _options{ options }
    {}

protected:
    const token& peek( std::size_t ahead = 0 ) const
    {
        return _tokens[ std::min( _pos + ahead, _tokens.size() - 1 ) ];
    }

    bool at( tok kind ) const { return peek().kind == kind; }

    token take() { return _tokens[ _pos < _tokens.size() - 1 ? _pos++ : _pos ]; }

    token expect( tok kind, const char* what )
    {
        if ( !at( kind ) )
            fail( std::string( "expected " ) + what + ", found " + describe( peek() ) );
        return take();
    }

    [[noreturn]] void fail( const std::string& message ) const { fail_at( peek(), message ); }

    [[noreturn]] static void fail_at( const token& t, const std::string& message )
    {
        throw ParseError( message, t.line, t.column );
    }

    void expect_close( tok kind, const token& opener )
    {
        if ( at( kind ) )
        {
            take();
            return;
        }
        if ( at( tok::end ) )
            fail_at( opener, "unbalanced '" + opener.text + "'" );
        fail( "expected closing bracket for '" + opener.text + "' at " + std::to_string( opener.line ) + ":"
              + std::to_string( opener.column ) + ", found " + describe( peek() ) );
    }

    void finish()
    {
        if ( at( tok::rparen ) || at( tok::rbrack ) || at( tok::rangle ) )
            fail( "unbalanced " + describe( peek() ) );
        if ( !at( tok::end ) )
            fail( "unexpected " + describe( peek() ) );
    }

    AgentId resolve_agent( const std::optional< token >& written, const token& where ) const
    {
        const auto& declared = _options.agents;
        if ( !written )
        {
            if ( declared.empty() )
                return _options.default_agent;
            if ( declared.size() == 1 )
                return declared.front();
            fail_at( where, "agent must be given explicitly when several agents are declared" );
        }
        if ( !declared.empty() && std::find( declared.begin(), declared.end(), written->text ) == declared.end() )
            fail_at( *written, "undeclared agent '" + written->text + "'" );
        return written->text;
    }

    static bool is_name( const std::string& s )
    {
        return !s.empty() && ( std::isalpha( static_cast< unsigned char >( s[ 0 ] ) ) != 0 || s[ 0 ] == '_' );
    }

    std::vector< token > _tokens;
    std::size_t _pos = 0;
    const ParseOptions& _options;
};

class formula_parser : parser_base
{
public:
    using parser_base::parser_base;

    Formula run()
    {
        Formula f = equivalence();
        finish();
        return f;
    }

private:
    Formula equivalence()
    {
        Formula lhs = implication();
        if ( at( tok::iff ) )
        {
            take();
            return Formula::equivalence( lhs, equivalence() );
        }
        return lhs;
    }

    Formula implication()
    {
        Formula lhs = disjunction();
        if ( at( tok::arrow ) )
        {
            take();
            return Formula::implication( lhs, implication() );
        }
        return lhs;
    }

    Formula disjunction()
    {
        Formula lhs = conjunction();
        while ( at( tok::disj ) )
        {
            take();
            lhs = Formula::disjunction( lhs, conjunction() );
        }
        return lhs;
    }

    Formula conjunction()
    {
        Formula lhs = unary();
        while ( at( tok::conj ) )
        {
            take();
            lhs = Formula::conjunction( lhs, unary() );
        }
        return lhs;
    }

    Formula unary()
    {
        if ( at( tok::neg ) )
        {
            take();
            return Formula::negation( unary() );
        }
        if ( at( tok::lbrack ) || at( tok::langle ) )
        {
            token opener = take();
            bool is_box = opener.kind == tok::lbrack;
            std::optional< token > written;
            if ( at( tok::ident ) )
                written = take();
            expect_close( is_box ? tok::rbrack : tok::rangle, opener );
            AgentId agent = resolve_agent( written, opener );
            Formula body = unary();
            return is_box ? Formula::box( agent, body ) : Formula::diamond( agent, body );
        }
        return primary();
    }

    Formula primary()
    {
        if ( at( tok::lparen ) )
        {
            token opener = take();
            Formula f = equivalence();
            expect_close( tok::rparen, opener );
            return f;
        }
        if ( at( tok::ident ) )
        {
            token t = take();
            if ( t.text == "T" )
                return Formula::top();
            if ( t.text == "F" )
                return Formula::bottom();
            if ( t.text.starts_with( "theta_" ) )
            {
                if ( t.text.size() == 6 )
                    fail_at( t, "empty theta label" );
                return Formula::theta( t.text.substr( 6 ) );
            }
            if ( !is_name( t.text ) )
                fail_at( t, "atom names must start with a letter or underscore" );
            return Formula::atom( t.text );
        }
        if ( at( tok::rparen ) || at( tok::rbrack ) || at( tok::rangle ) )
            fail( "unbalanced " + describe( peek() ) );
        fail( "expected a formula, found " + describe( peek() ) );
    }
};

class property_parser : parser_base
{
public:
    using parser_base::parser_base;

    FoFormula run()
    {
        FoFormula f = implication();
        finish();
        return f;
    }

private:
    static bool is_keyword( const std::string& s )
    {
        return s == "forall" || s == "exists" || s == "R" || s.starts_with( "R_" );
    }

    std::string variable()
    {
        token t = expect( tok::ident, "a variable" );
        if ( is_keyword( t.text ) || !is_name( t.text ) )
            fail_at( t, "invalid variable name '" + t.text + "'" );
        return t.text;
    }

    FoFormula implication()
    {
        FoFormula lhs = disjunction();
        if ( at( tok::arrow ) )
        {
            take();
            return FoFormula::implication( lhs, implication() );
        }
        return lhs;
    }

    FoFormula disjunction()
    {
        FoFormula lhs = conjunction();
        while ( at( tok::disj ) )
        {
            take();
            lhs = FoFormula::disjunction( lhs, conjunction() );
        }
        return lhs;
    }

    FoFormula conjunction()
    {
        FoFormula lhs = unary();
        while ( at( tok::conj ) )
        {
            take();
            lhs = FoFormula::conjunction( lhs, unary() );
        }
        return lhs;
    }

    FoFormula unary()
    {
        if ( at( tok::neg ) )
        {
            take();
            return FoFormula::negation( unary() );
        }
        if ( at( tok::ident ) && ( peek().text == "forall" || peek().text == "exists" ) )
        {
            bool universal = take().text == "forall";
            std::vector< std::string > vars{ variable() };
            while ( at( tok::comma ) )
            {
                take();
                vars.push_back( variable() );
            }
            FoFormula body = implication();
            for ( auto it = vars.rbegin(); it != vars.rend(); ++it )
                body = universal ? FoFormula::forall( *it, body ) : FoFormula::exists( *it, body );
            return body;
        }
        return primary();
    }

    FoFormula primary()
    {
        if ( at( tok::lparen ) )
        {
            token opener = take();
            FoFormula f = implication();
            expect_close( tok::rparen, opener );
            return f;
        }
        if ( at( tok::ident ) && ( peek().text == "R" || peek().text.starts_with( "R_" ) )
             && peek( 1 ).kind == tok::lparen )
        {
            token r = take();
            std::optional< token > written;
            if ( r.text.size() > 2 )
                written = token{ tok::ident, r.text.substr( 2 ), r.line, r.column + 2 };
            AgentId agent = resolve_agent( written, r );
            token opener = take();
            std::string s = variable();
            expect( tok::comma, "','" );
            std::string t = variable();
            expect_close( tok::rparen, opener );
            return FoFormula::relation( agent, s, t );
        }
        if ( at( tok::ident ) )
        {
            std::string s = variable();
            expect( tok::equals, "'=' or a relation" );
            std::string t = variable();
            return FoFormula::equality( s, t );
        }
        if ( at( tok::rparen ) )
            fail( "unbalanced " + describe( peek() ) );
        fail( "expected a property, found " + describe( peek() ) );
    }
};

} // namespace

Formula parse_formula( std::string_view text, const ParseOptions& options )
{
    return formula_parser{ text, options }.run();
}

FoFormula parse_fo_formula( std::string_view text, const ParseOptions& options )
{
    return property_parser{ text, options }.run();
}

LocalProperty parse_property( std::string_view text, const ParseOptions& options )
{
    FoFormula body = parse_fo_formula( text, options );
    auto vars = free_variables( body );
    if ( vars.size() != 1 )
    {
        std::string listed;
        for ( const auto& v : vars )
            listed += ( listed.empty() ? "" : ", " ) + v;
        throw ParseError( "a local property needs exactly one free variable, found "
                              + std::to_string( vars.size() ) + ( listed.empty() ? "" : " (" + listed + ")" ),
                          1, 1 );
    }
    return LocalProperty{ body };
}

} // namespace localmodal
