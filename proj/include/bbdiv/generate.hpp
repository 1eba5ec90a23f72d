#pragma once

// Seeded generators for systems, partitions and relations. All sampling goes
// through raw 64-bit draws mapped by modulo, so results are identical across
// standard library implementations.

#include "fixpoint.hpp"
#include "lts.hpp"
#include "partition.hpp"
#include "relation.hpp"
#include "stuttering.hpp"

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

namespace bbdiv
{

inline constexpr std::uint64_t fallback_seed = 0x5eed'b1d1'7a11ULL;

// BBDIV_SEED, when set to a number, replaces the built-in seed.
inline std::uint64_t default_seed()
{
    if ( const char* env = std::getenv( "BBDIV_SEED" ) )
    {
        char* end = nullptr;
        auto value = std::strtoull( env, &end, 0 );
        if ( end != env && *end == '\0' )
            return value;
    }
    return fallback_seed;
}

struct run_config
{
    std::uint64_t seed = default_seed();
    std::size_t lasso_bound = default_lasso_bound;
    std::size_t sample_count = 100;
    std::size_t max_states = 6;
    double tau_density = 0.4;
};

class generator
{
    std::mt19937_64 _rng;

public:
    explicit generator( std::uint64_t seed ) : _rng{ seed } {}

    // Uniform in [0, n); n > 0.
    std::size_t below( std::size_t n ) { return static_cast<std::size_t>( _rng() % n ); }

    bool chance( double p ) { return static_cast<double>( _rng() >> 11 ) * 0x1.0p-53 < p; }

    std::uint64_t next() { return _rng(); }

    // 1..max_states states, out-degree 0..3, silent with probability
    // tau_density, otherwise "a" or "b".
    lts random_lts( std::size_t max_states, double tau_density )
    {
        auto n = 1 + below( max_states );
        std::vector<transition> ts;
        for ( state_t s = 0; s < n; ++s )
        {
            auto degree = below( 4 );
            for ( std::size_t k = 0; k < degree; ++k )
            {
                auto dst = static_cast<state_t>( below( n ) );
                label_t label = chance( tau_density ) ? lts::tau : static_cast<label_t>( 1 + below( 2 ) );
                ts.push_back( { s, label, dst } );
            }
        }
        return lts( n, 0, { "tau", "a", "b" }, std::move( ts ) );
    }

    // Exactly n states and m distinct transitions.
    lts random_lts_exact( std::size_t n, std::size_t m, double tau_density, std::size_t visible_labels = 2 )
    {
        if ( n == 0 || m > n * n * ( visible_labels + 1 ) )
            throw precondition_error( "cannot place that many distinct transitions" );
        std::vector<std::string> labels{ "tau" };
        for ( std::size_t i = 0; i < visible_labels; ++i )
            labels.push_back( std::string( 1, static_cast<char>( 'a' + i % 26 ) ) +
                              ( i >= 26 ? std::to_string( i / 26 ) : "" ) );
        std::unordered_set<std::uint64_t> seen;
        std::vector<transition> ts;
        while ( ts.size() < m )
        {
            auto src = static_cast<state_t>( below( n ) );
            auto dst = static_cast<state_t>( below( n ) );
            label_t label = chance( tau_density ) ? lts::tau : static_cast<label_t>( 1 + below( visible_labels ) );
            auto code = ( std::uint64_t{ src } * n + dst ) * ( visible_labels + 1 ) + label;
            if ( seen.insert( code ).second )
                ts.push_back( { src, label, dst } );
        }
        return lts( n, 0, std::move( labels ), std::move( ts ) );
    }

    partition random_partition( std::size_t n )
    {
        auto k = 1 + below( n == 0 ? 1 : n );
        std::vector<block_t> ids( n );
        for ( auto& b : ids )
            b = static_cast<block_t>( below( k ) );
        return partition( std::move( ids ) );
    }

    // Each pair kept with probability p; symmetric pairs are kept or dropped together.
    relation random_subrelation( const relation& from, double p, bool symmetric )
    {
        relation out( from.universe() );
        for ( auto [ s, t ] : from.pairs() )
        {
            if ( symmetric && t < s )
                continue;
            if ( !chance( p ) )
                continue;
            out.insert( s, t );
            if ( symmetric && from.contains( t, s ) )
                out.insert( t, s );
        }
        return out;
    }

    relation random_relation( std::size_t n, double p, bool symmetric )
    {
        return random_subrelation( relation::total( n ), p, symmetric );
    }

    // A mix of relations that satisfy strong conditions (the equivalences
    // and their parts) and arbitrary ones, indexed round-robin by `kind`.
    relation sample_relation( const lts& l, const partition& bbd, const partition& bb, std::size_t kind )
    {
        auto n = l.state_count();
        switch ( kind % 8 )
        {
        case 0: return relation::of_partition( bbd );
        case 1: return relation::of_partition( bb );
        case 2: return random_subrelation( relation::of_partition( bbd ), 0.7, true );
        case 3: return random_subrelation( relation::of_partition( bb ), 0.7, true );
        case 4: return stuttering_closure( l, random_subrelation( relation::of_partition( bbd ), 0.5, true ) );
        case 5: return random_relation( n, 0.3, true );
        case 6: return random_relation( n, 0.5, false );
        default: return random_subrelation( relation::of_partition( bb ), 0.9, false );
        }
    }
};

} // namespace bbdiv
