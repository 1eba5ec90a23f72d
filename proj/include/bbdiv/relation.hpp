#pragma once

#include "aut.hpp"
#include "error.hpp"
#include "partition.hpp"
#include "state_set.hpp"

#include <cstddef>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bbdiv
{

using state_pair = std::pair<state_t, state_t>;

// A binary relation on the states {0, ..., n-1}, stored as a bit matrix with
// both row (image) and column (pre-image) views. Symmetry is not assumed.
class relation
{
    std::size_t _n = 0;
    std::vector<state_set> _rows;
    std::vector<state_set> _cols;

public:
    relation() = default;

    explicit relation( std::size_t n ) : _n{ n }, _rows( n, state_set( n ) ), _cols( n, state_set( n ) ) {}

    relation( std::size_t n, std::initializer_list<state_pair> pairs ) : relation( n )
    {
        for ( auto [ s, t ] : pairs )
            insert( s, t );
    }

    relation( std::size_t n, const std::vector<state_pair>& pairs ) : relation( n )
    {
        for ( auto [ s, t ] : pairs )
            insert( s, t );
    }

    static relation identity( std::size_t n )
    {
        relation r( n );
        for ( std::size_t s = 0; s < n; ++s )
            r.insert( static_cast<state_t>( s ), static_cast<state_t>( s ) );
        return r;
    }

    static relation total( std::size_t n )
    {
        relation r( n );
        for ( std::size_t s = 0; s < n; ++s )
        {
            r._rows[ s ] = state_set::full( n );
            r._cols[ s ] = state_set::full( n );
        }
        return r;
    }

    // The equivalence induced by a partition.
    static relation of_partition( const partition& p )
    {
        relation r( p.state_count() );
        auto blocks = p.blocks();
        for ( const auto& block : blocks )
        {
            state_set members( p.state_count() );
            for ( auto s : block )
                members.insert( s );
            for ( auto s : block )
            {
                r._rows[ s ] = members;
                r._cols[ s ] = members;
            }
        }
        return r;
    }

    [[nodiscard]] std::size_t universe() const { return _n; }

    [[nodiscard]] bool contains( state_t s, state_t t ) const { return _rows[ s ].contains( t ); }

    void insert( state_t s, state_t t )
    {
        if ( s >= _n || t >= _n )
            throw precondition_error( "pair (" + std::to_string( s ) + "," + std::to_string( t ) +
                                      ") out of range" );
        _rows[ s ].insert( t );
        _cols[ t ].insert( s );
    }

    void erase( state_t s, state_t t )
    {
        _rows[ s ].erase( t );
        _cols[ t ].erase( s );
    }

    // { v | (s, v) in r }
    [[nodiscard]] const state_set& image( state_t s ) const { return _rows[ s ]; }
    // { u | (u, t) in r }
    [[nodiscard]] const state_set& preimage( state_t t ) const { return _cols[ t ]; }

    // Union of the images of all members of X.
    [[nodiscard]] state_set image( const state_set& from ) const
    {
        state_set out( _n );
        from.for_each( [ & ]( state_t s ) { out |= _rows[ s ]; } );
        return out;
    }

    [[nodiscard]] state_set preimage( const state_set& to ) const
    {
        state_set out( _n );
        to.for_each( [ & ]( state_t t ) { out |= _cols[ t ]; } );
        return out;
    }

    [[nodiscard]] std::size_t size() const
    {
        std::size_t n = 0;
        for ( const auto& row : _rows )
            n += row.size();
        return n;
    }

    [[nodiscard]] bool empty() const { return size() == 0; }

    // Pairs in ascending lexicographic order.
    [[nodiscard]] std::vector<state_pair> pairs() const
    {
        std::vector<state_pair> out;
        for ( std::size_t s = 0; s < _n; ++s )
            _rows[ s ].for_each( [ & ]( state_t t ) { out.emplace_back( static_cast<state_t>( s ), t ); } );
        return out;
    }

    [[nodiscard]] bool is_symmetric() const
    {
        for ( std::size_t s = 0; s < _n; ++s )
            if ( _rows[ s ] != _cols[ s ] )
                return false;
        return true;
    }

    [[nodiscard]] bool subset_of( const relation& other ) const
    {
        for ( std::size_t s = 0; s < _n; ++s )
            if ( !_rows[ s ].subset_of( other._rows[ s ] ) )
                return false;
        return true;
    }

    relation& operator|=( const relation& other )
    {
        for ( std::size_t s = 0; s < _n; ++s )
        {
            _rows[ s ] |= other._rows[ s ];
            _cols[ s ] |= other._cols[ s ];
        }
        return *this;
    }

    [[nodiscard]] relation inverse() const
    {
        relation r( _n );
        r._rows = _cols;
        r._cols = _rows;
        return r;
    }

    friend bool operator==( const relation& a, const relation& b ) { return a._n == b._n && a._rows == b._rows; }
};

// r ∪ r⁻¹
inline relation symmetric_closure( const relation& r )
{
    auto out = r;
    out |= r.inverse();
    return out;
}

// { (s,u) | ∃t. (s,t) ∈ r1 ∧ (t,u) ∈ r2 }
inline relation compose( const relation& r1, const relation& r2 )
{
    if ( r1.universe() != r2.universe() )
        throw precondition_error( "composing relations over different state spaces" );
    relation out( r1.universe() );
    for ( std::size_t s = 0; s < r1.universe(); ++s )
    {
        auto img = r2.image( r1.image( static_cast<state_t>( s ) ) );
        img.for_each( [ & ]( state_t u ) { out.insert( static_cast<state_t>( s ), u ); } );
    }
    return out;
}

inline relation union_rel( const std::vector<relation>& rs )
{
    if ( rs.empty() )
        return relation();
    relation out( rs.front().universe() );
    for ( const auto& r : rs )
    {
        if ( r.universe() != out.universe() )
            throw precondition_error( "union of relations over different state spaces" );
        out |= r;
    }
    return out;
}

inline bool is_equivalence( const relation& r )
{
    auto n = r.universe();
    for ( std::size_t s = 0; s < n; ++s )
        if ( !r.contains( static_cast<state_t>( s ), static_cast<state_t>( s ) ) )
            return false;
    if ( !r.is_symmetric() )
        return false;
    for ( std::size_t s = 0; s < n; ++s )
    {
        const auto& row = r.image( static_cast<state_t>( s ) );
        bool closed = true;
        row.for_each( [ & ]( state_t t ) { closed = closed && r.image( t ) == row; } );
        if ( !closed )
            return false;
    }
    return true;
}

// The classes of an equivalence relation.
inline partition partition_of_equivalence( const relation& r )
{
    if ( !is_equivalence( r ) )
        throw internal_error( "relation is not an equivalence" );
    constexpr auto unset = static_cast<block_t>( -1 );
    std::vector<block_t> ids( r.universe(), unset );
    block_t next = 0;
    for ( std::size_t s = 0; s < r.universe(); ++s )
    {
        if ( ids[ s ] != unset )
            continue;
        r.image( static_cast<state_t>( s ) ).for_each( [ & ]( state_t t ) { ids[ t ] = next; } );
        ++next;
    }
    return partition( std::move( ids ) );
}

// Relation files: one pair per line as two whitespace-separated indices;
// '#' starts a comment, blank lines are ignored.
inline relation parse_relation( std::string_view text, std::size_t state_count )
{
    relation r( state_count );
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while ( pos <= text.size() )
    {
        auto end = text.find( '\n', pos );
        if ( end == std::string_view::npos )
            end = text.size();
        auto line = text.substr( pos, end - pos );
        pos = end + 1;
        ++lineno;
        if ( auto hash = line.find( '#' ); hash != std::string_view::npos )
            line = line.substr( 0, hash );
        std::istringstream in{ std::string( line ) };
        std::string a, b, extra;
        if ( !( in >> a ) )
            continue;
        if ( !( in >> b ) || ( in >> extra ) )
            throw parse_error( lineno, "expected two state indices" );
        auto s = detail::parse_number( a, lineno, "state index" );
        auto t = detail::parse_number( b, lineno, "state index" );
        if ( s >= state_count )
            throw parse_error( lineno, "state " + std::to_string( s ) + " out of range" );
        if ( t >= state_count )
            throw parse_error( lineno, "state " + std::to_string( t ) + " out of range" );
        r.insert( static_cast<state_t>( s ), static_cast<state_t>( t ) );
    }
    return r;
}

inline std::string format_relation( const relation& r )
{
    std::ostringstream out;
    for ( auto [ s, t ] : r.pairs() )
        out << s << ' ' << t << '\n';
    return out.str();
}

inline relation read_relation_file( const std::string& path, std::size_t state_count )
{
    std::ifstream in( path, std::ios::binary );
    if ( !in )
        throw parse_error( 0, "cannot open " + path );
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_relation( buffer.str(), state_count );
}

} // namespace bbdiv
