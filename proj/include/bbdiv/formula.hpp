#pragma once

// Formulas of the until logics with divergence modalities.
//
//   !f            negation
//   &{f, ...}     finite conjunction, tt = &{}
//   |{f, ...}     finite disjunction
//   f JU[a] g     just-before until
//   f WU[a] g     weak until
//   f SU[a] g     strong until
//   DIV f         a divergence through f-states, after silent steps
//   SDIV f        a divergence through f-states, starting here
//
// Nodes are immutable and hash-consed, so structurally equal formulas share
// one node and pointer equality is formula equality. Conjunction and
// disjunction members are kept sorted and duplicate-free.

#include "error.hpp"
#include "lts.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bbdiv
{

enum class formula_kind : std::uint8_t
{
    neg,
    conj,
    disj,
    just_before,
    weak_until,
    strong_until,
    div,
    sdiv
};

class formula_node;
using formula = std::shared_ptr<const formula_node>;

class formula_node
{
    formula_kind _kind;
    std::string _label;
    std::vector<formula> _operands;
    std::size_t _hash;
    std::size_t _depth;

    struct passkey
    {
    };
    friend formula make_formula( formula_kind, std::string, std::vector<formula> );

public:
    formula_node( passkey, formula_kind kind, std::string label, std::vector<formula> operands, std::size_t hash )
            : _kind{ kind }, _label{ std::move( label ) }, _operands{ std::move( operands ) }, _hash{ hash }, _depth{ 0 }
    {
        for ( const auto& f : _operands )
            _depth = std::max( _depth, f->_depth + 1 );
    }

    [[nodiscard]] formula_kind kind() const { return _kind; }
    // The action of an until modality; empty otherwise.
    [[nodiscard]] const std::string& label() const { return _label; }
    // neg, div, sdiv: one operand; untils: left then right; lists: members.
    [[nodiscard]] const std::vector<formula>& operands() const { return _operands; }
    [[nodiscard]] const formula& operand() const { return _operands.front(); }
    [[nodiscard]] const formula& left() const { return _operands[ 0 ]; }
    [[nodiscard]] const formula& right() const { return _operands[ 1 ]; }
    [[nodiscard]] std::size_t hash() const { return _hash; }
    // Nesting depth of operators; tt has depth 0.
    [[nodiscard]] std::size_t depth() const { return _depth; }

    [[nodiscard]] bool is_binary() const
    {
        return _kind == formula_kind::just_before || _kind == formula_kind::weak_until ||
               _kind == formula_kind::strong_until;
    }
    [[nodiscard]] bool is_list() const { return _kind == formula_kind::conj || _kind == formula_kind::disj; }
    [[nodiscard]] bool is_true() const { return _kind == formula_kind::conj && _operands.empty(); }
    [[nodiscard]] bool is_false() const { return _kind == formula_kind::neg && _operands.front()->is_true(); }
};

// A total order on formulas, independent of node addresses.
inline std::strong_ordering compare( const formula& a, const formula& b )
{
    if ( a == b )
        return std::strong_ordering::equal;
    if ( auto c = a->kind() <=> b->kind(); c != 0 )
        return c;
    if ( auto c = a->label() <=> b->label(); c != 0 )
        return c;
    if ( auto c = a->operands().size() <=> b->operands().size(); c != 0 )
        return c;
    for ( std::size_t i = 0; i < a->operands().size(); ++i )
        if ( auto c = compare( a->operands()[ i ], b->operands()[ i ] ); c != 0 )
            return c;
    return std::strong_ordering::equal;
}

struct formula_less
{
    bool operator()( const formula& a, const formula& b ) const { return compare( a, b ) < 0; }
};

namespace detail
{

struct intern_key
{
    formula_kind kind;
    std::string label;
    std::vector<const formula_node*> operands;

    friend bool operator==( const intern_key&, const intern_key& ) = default;
};

struct intern_hash
{
    std::size_t operator()( const intern_key& k ) const
    {
        std::size_t h = std::hash<std::string>{}( k.label ) ^ ( static_cast<std::size_t>( k.kind ) * 0x9e3779b97f4a7c15ULL );
        for ( const auto* p : k.operands )
            h = ( h ^ p->hash() ) * 0x100000001b3ULL;
        return h;
    }
};

struct intern_table
{
    std::mutex lock;
    std::unordered_map<intern_key, std::weak_ptr<const formula_node>, intern_hash> nodes;
    std::size_t purge_at = 1024;
};

inline intern_table& interned()
{
    static intern_table table;
    return table;
}

} // namespace detail

inline formula make_formula( formula_kind kind, std::string label, std::vector<formula> operands )
{
    detail::intern_key key{ kind, label, {} };
    for ( const auto& f : operands )
        key.operands.push_back( f.get() );
    auto hash = detail::intern_hash{}( key );

    auto& table = detail::interned();
    std::lock_guard guard( table.lock );
    if ( auto it = table.nodes.find( key ); it != table.nodes.end() )
        if ( auto existing = it->second.lock() )
            return existing;
    if ( table.nodes.size() >= table.purge_at )
    {
        std::erase_if( table.nodes, []( const auto& entry ) { return entry.second.expired(); } );
        table.purge_at = std::max<std::size_t>( 1024, table.nodes.size() * 2 );
    }
    auto node = std::make_shared<const formula_node>( formula_node::passkey{}, kind, std::move( label ),
                                                      std::move( operands ), hash );
    table.nodes.insert_or_assign( std::move( key ), node );
    return node;
}

namespace detail
{

inline formula make_list( formula_kind kind, std::vector<formula> members )
{
    std::sort( members.begin(), members.end(), formula_less{} );
    members.erase( std::unique( members.begin(), members.end() ), members.end() );
    return make_formula( kind, {}, std::move( members ) );
}

inline std::string canonical_label( std::string_view label )
{
    if ( label == "i" )
        return std::string{ tau_name };
    return std::string{ label };
}

} // namespace detail

inline formula conj( std::vector<formula> members )
{
    return detail::make_list( formula_kind::conj, std::move( members ) );
}
inline formula disj( std::vector<formula> members )
{
    return detail::make_list( formula_kind::disj, std::move( members ) );
}
inline formula tt() { return conj( {} ); }
inline formula neg( formula f ) { return make_formula( formula_kind::neg, {}, { std::move( f ) } ); }
inline formula ff() { return neg( tt() ); }
inline formula just_before( formula f, std::string_view a, formula g )
{
    return make_formula( formula_kind::just_before, detail::canonical_label( a ), { std::move( f ), std::move( g ) } );
}
inline formula weak_until( formula f, std::string_view a, formula g )
{
    return make_formula( formula_kind::weak_until, detail::canonical_label( a ), { std::move( f ), std::move( g ) } );
}
inline formula strong_until( formula f, std::string_view a, formula g )
{
    return make_formula( formula_kind::strong_until, detail::canonical_label( a ),
                         { std::move( f ), std::move( g ) } );
}
inline formula div( formula f ) { return make_formula( formula_kind::div, {}, { std::move( f ) } ); }
inline formula sdiv( formula f ) { return make_formula( formula_kind::sdiv, {}, { std::move( f ) } ); }

// A conjunction that collapses to its only member.
inline formula conj_or_single( std::vector<formula> members )
{
    auto f = conj( std::move( members ) );
    return f->operands().size() == 1 ? f->operand() : f;
}

inline formula make_binary( formula_kind kind, formula f, std::string_view a, formula g )
{
    switch ( kind )
    {
    case formula_kind::just_before: return just_before( std::move( f ), a, std::move( g ) );
    case formula_kind::weak_until: return weak_until( std::move( f ), a, std::move( g ) );
    case formula_kind::strong_until: return strong_until( std::move( f ), a, std::move( g ) );
    default: throw precondition_error( "not an until modality" );
    }
}

// Same node kind and label, new operands.
inline formula rebuild( const formula& f, std::vector<formula> operands )
{
    if ( f->is_list() )
        return detail::make_list( f->kind(), std::move( operands ) );
    return make_formula( f->kind(), f->label(), std::move( operands ) );
}

namespace detail
{

inline std::string_view until_keyword( formula_kind kind )
{
    switch ( kind )
    {
    case formula_kind::just_before: return "JU";
    case formula_kind::weak_until: return "WU";
    default: return "SU";
    }
}

inline void print( const formula& f, std::string& out );

inline void print_operand( const formula& f, std::string& out, bool bare )
{
    if ( bare )
        return print( f, out );
    out += '(';
    print( f, out );
    out += ')';
}

inline void print( const formula& f, std::string& out )
{
    if ( f->is_true() )
    {
        out += "tt";
        return;
    }
    if ( f->is_false() )
    {
        out += "ff";
        return;
    }
    switch ( f->kind() )
    {
    case formula_kind::neg:
        out += '!';
        print_operand( f->operand(), out, !f->operand()->is_binary() );
        return;
    case formula_kind::div:
    case formula_kind::sdiv:
        out += f->kind() == formula_kind::div ? "DIV " : "SDIV ";
        print_operand( f->operand(), out, !f->operand()->is_binary() );
        return;
    case formula_kind::conj:
    case formula_kind::disj: {
        out += f->kind() == formula_kind::conj ? "&{" : "|{";
        bool first = true;
        for ( const auto& g : f->operands() )
        {
            if ( !first )
                out += ", ";
            first = false;
            print( g, out );
        }
        out += '}';
        return;
    }
    default: {
        auto bare = []( const formula& g ) { return g->is_true() || g->is_false() || g->is_list(); };
        print_operand( f->left(), out, bare( f->left() ) );
        out += ' ';
        out += until_keyword( f->kind() );
        out += '[';
        out += f->label();
        out += "] ";
        print_operand( f->right(), out, bare( f->right() ) );
        return;
    }
    }
}

class formula_parser
{
    std::string_view _text;
    std::size_t _pos = 0;

    void skip()
    {
        while ( _pos < _text.size() &&
                ( _text[ _pos ] == ' ' || _text[ _pos ] == '\t' || _text[ _pos ] == '\n' || _text[ _pos ] == '\r' ) )
            ++_pos;
    }

    bool accept( std::string_view token )
    {
        skip();
        if ( _text.substr( _pos, token.size() ) != token )
            return false;
        _pos += token.size();
        return true;
    }

    // Two tokens in a row, possibly separated by whitespace.
    bool accept( std::string_view first, std::string_view second )
    {
        auto saved = _pos;
        if ( accept( first ) && accept( second ) )
            return true;
        _pos = saved;
        return false;
    }

    bool at_until()
    {
        auto saved = _pos;
        bool found = accept( "JU", "[" ) || accept( "WU", "[" ) || accept( "SU", "[" );
        _pos = saved;
        return found;
    }

    void expect( std::string_view token )
    {
        if ( !accept( token ) )
            throw syntax_error( _pos, "expected '" + std::string( token ) + "'" );
    }

    std::vector<formula> list()
    {
        std::vector<formula> members;
        if ( accept( "}" ) )
            return members;
        for ( ;; )
        {
            members.push_back( parse_formula() );
            if ( accept( "}" ) )
                return members;
            expect( "," );
        }
    }

    formula operand()
    {
        skip();
        if ( accept( "tt" ) )
            return tt();
        if ( accept( "ff" ) )
            return ff();
        if ( accept( "&", "{" ) )
            return conj( list() );
        if ( accept( "|", "{" ) )
            return disj( list() );
        if ( accept( "!" ) )
            return neg( operand() );
        if ( accept( "SDIV" ) )
            return sdiv( operand() );
        if ( accept( "DIV" ) )
            return div( operand() );
        if ( accept( "(" ) )
        {
            auto f = parse_formula();
            expect( ")" );
            return f;
        }
        if ( _pos >= _text.size() )
            throw syntax_error( _pos, "unexpected end of formula" );
        throw syntax_error( _pos, "unexpected character '" + std::string( 1, _text[ _pos ] ) + "'" );
    }

public:
    explicit formula_parser( std::string_view text ) : _text{ text } {}

    formula parse_formula()
    {
        auto left = operand();
        std::optional<formula_kind> kind;
        if ( accept( "JU", "[" ) )
            kind = formula_kind::just_before;
        else if ( accept( "WU", "[" ) )
            kind = formula_kind::weak_until;
        else if ( accept( "SU", "[" ) )
            kind = formula_kind::strong_until;
        if ( !kind )
            return left;
        auto close = _text.find( ']', _pos );
        if ( close == std::string_view::npos )
            throw syntax_error( _pos, "expected ']'" );
        auto label = trim_label( _text.substr( _pos, close - _pos ) );
        if ( label.empty() )
            throw syntax_error( _pos, "empty action label" );
        if ( label.find_first_of( "\"[{}(), \t\n\r" ) != std::string_view::npos )
            throw syntax_error( _pos, "invalid action label '" + std::string( label ) + "'" );
        _pos = close + 1;
        auto right = operand();
        skip();
        if ( at_until() )
            throw syntax_error( _pos, "until modalities do not associate; add parentheses" );
        return make_binary( *kind, std::move( left ), label, std::move( right ) );
    }

    void finish()
    {
        skip();
        if ( _pos != _text.size() )
            throw syntax_error( _pos, "trailing input" );
    }

    static std::string_view trim_label( std::string_view s )
    {
        while ( !s.empty() && ( s.front() == ' ' || s.front() == '\t' ) )
            s.remove_prefix( 1 );
        while ( !s.empty() && ( s.back() == ' ' || s.back() == '\t' ) )
            s.remove_suffix( 1 );
        return s;
    }
};

} // namespace detail

inline std::string to_string( const formula& f )
{
    std::string out;
    detail::print( f, out );
    return out;
}

inline formula parse_formula( std::string_view text )
{
    detail::formula_parser parser( text );
    auto f = parser.parse_formula();
    parser.finish();
    return f;
}

// Number of nodes when the formula is unfolded into a tree.
inline std::size_t tree_size( const formula& f )
{
    std::unordered_map<const formula_node*, std::size_t> memo;
    std::function<std::size_t( const formula& )> go = [ & ]( const formula& g ) -> std::size_t {
        if ( auto it = memo.find( g.get() ); it != memo.end() )
            return it->second;
        std::size_t n = 1;
        for ( const auto& h : g->operands() )
            n += go( h );
        return memo[ g.get() ] = n;
    };
    return go( f );
}

} // namespace bbdiv
