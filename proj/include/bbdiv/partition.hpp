#pragma once

#include "error.hpp"
#include "state_set.hpp"

#include <cstddef>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace bbdiv
{

using block_t = std::uint32_t;

// An equivalence on states: doubles as a colouring and as the result of the
// decision procedures. Blocks are numbered densely in order of their least
// member, so two partitions are equal iff they induce the same equivalence.
class partition
{
    std::vector<block_t> _block_of;
    std::size_t _block_count = 0;

    void normalise()
    {
        constexpr auto unset = static_cast<block_t>( -1 );
        std::vector<block_t> rename;
        block_t next = 0;
        for ( auto& b : _block_of )
        {
            if ( b >= rename.size() )
                rename.resize( b + 1, unset );
            if ( rename[ b ] == unset )
                rename[ b ] = next++;
            b = rename[ b ];
        }
        _block_count = next;
    }

public:
    partition() = default;

    // Any labelling of states by block identifiers; normalised on entry.
    explicit partition( std::vector<block_t> block_of ) : _block_of{ std::move( block_of ) } { normalise(); }

    static partition discrete( std::size_t n )
    {
        std::vector<block_t> ids( n );
        for ( std::size_t s = 0; s < n; ++s )
            ids[ s ] = static_cast<block_t>( s );
        return partition( std::move( ids ) );
    }

    static partition single_block( std::size_t n ) { return partition( std::vector<block_t>( n, 0 ) ); }

    static partition from_blocks( std::size_t n, const std::vector<std::vector<state_t>>& blocks )
    {
        constexpr auto unset = static_cast<block_t>( -1 );
        std::vector<block_t> ids( n, unset );
        for ( std::size_t b = 0; b < blocks.size(); ++b )
        {
            if ( blocks[ b ].empty() )
                throw precondition_error( "empty block" );
            for ( auto s : blocks[ b ] )
            {
                if ( s >= n )
                    throw precondition_error( "state " + std::to_string( s ) + " out of range" );
                if ( ids[ s ] != unset )
                    throw precondition_error( "state " + std::to_string( s ) + " occurs in two blocks" );
                ids[ s ] = static_cast<block_t>( b );
            }
        }
        for ( std::size_t s = 0; s < n; ++s )
            if ( ids[ s ] == unset )
                throw precondition_error( "state " + std::to_string( s ) + " is in no block" );
        return partition( std::move( ids ) );
    }

    [[nodiscard]] std::size_t state_count() const { return _block_of.size(); }
    [[nodiscard]] std::size_t block_count() const { return _block_count; }
    [[nodiscard]] block_t block_of( state_t s ) const { return _block_of[ s ]; }
    [[nodiscard]] const std::vector<block_t>& block_ids() const { return _block_of; }
    [[nodiscard]] bool same_block( state_t s, state_t t ) const { return _block_of[ s ] == _block_of[ t ]; }

    [[nodiscard]] std::vector<std::vector<state_t>> blocks() const
    {
        std::vector<std::vector<state_t>> out( _block_count );
        for ( std::size_t s = 0; s < _block_of.size(); ++s )
            out[ _block_of[ s ] ].push_back( static_cast<state_t>( s ) );
        return out;
    }

    [[nodiscard]] state_set members( block_t b ) const
    {
        state_set out( _block_of.size() );
        for ( std::size_t s = 0; s < _block_of.size(); ++s )
            if ( _block_of[ s ] == b )
                out.insert( static_cast<state_t>( s ) );
        return out;
    }

    // Every block of *this lies inside a block of `coarser`.
    [[nodiscard]] bool refines( const partition& coarser ) const
    {
        if ( coarser.state_count() != state_count() )
            return false;
        constexpr auto unset = static_cast<block_t>( -1 );
        std::vector<block_t> parent( _block_count, unset );
        for ( std::size_t s = 0; s < _block_of.size(); ++s )
        {
            auto& p = parent[ _block_of[ s ] ];
            if ( p == unset )
                p = coarser.block_of( static_cast<state_t>( s ) );
            else if ( p != coarser.block_of( static_cast<state_t>( s ) ) )
                return false;
        }
        return true;
    }

    friend bool operator==( const partition&, const partition& ) = default;
};

// One line per block, ascending members, blocks ordered by least member.
inline std::string format_partition( const partition& p )
{
    std::ostringstream out;
    for ( const auto& block : p.blocks() )
    {
        for ( std::size_t i = 0; i < block.size(); ++i )
            out << ( i ? " " : "" ) << block[ i ];
        out << '\n';
    }
    return out.str();
}

} // namespace bbdiv
