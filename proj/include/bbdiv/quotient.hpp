#pragma once

#include "colouring.hpp"
#include "error.hpp"
#include "lts.hpp"
#include "partition.hpp"

#include <vector>

namespace bbdiv
{

// One state per block. Silent steps inside a block are dropped, except that a
// C-divergent block keeps a silent self-loop so divergence survives.
inline lts quotient( const lts& l, const partition& p )
{
    if ( p.state_count() != l.state_count() )
        throw precondition_error( "partition and system have different state counts" );
    auto sigs = compute_signatures( l, p );
    std::vector<transition> out;
    std::vector<char> looped( p.block_count(), 0 );
    for ( const auto& tr : l.transitions() )
    {
        auto from = p.block_of( tr.src );
        auto to = p.block_of( tr.dst );
        if ( tr.label == lts::tau && from == to )
            continue;
        out.push_back( { from, tr.label, to } );
    }
    for ( state_t s = 0; s < l.state_count(); ++s )
    {
        auto b = p.block_of( s );
        if ( sigs[ s ].divergent && !looped[ b ] )
        {
            looped[ b ] = 1;
            out.push_back( { b, lts::tau, b } );
        }
    }
    auto initial = l.state_count() == 0 ? state_t{ 0 } : p.block_of( l.initial() );
    return lts( p.block_count(), initial, l.labels(), std::move( out ) );
}

} // namespace bbdiv
