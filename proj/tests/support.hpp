#pragma once

// Fixture access and brute-force oracles. The oracles work from the transition
// list alone and share no code with the library's algorithms.

#include "bbdiv/bbdiv.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace bbdiv::test
{

inline std::string fixture( const std::string& name ) { return std::string( BBDIV_FIXTURE_DIR ) + "/" + name; }

inline lts load( const std::string& name ) { return read_aut_file( fixture( name ) ); }

inline relation load_relation( const std::string& name, const lts& l )
{
    return read_relation_file( fixture( name ), l.state_count() );
}

inline const lts& fix1()
{
    static const lts l = load( "fix1.aut" );
    return l;
}

inline const lts& fix2()
{
    static const lts l = load( "fix2.aut" );
    return l;
}

inline const lts& fix3()
{
    static const lts l = load( "fix3.aut" );
    return l;
}

inline relation fix4r() { return relation( 4, { { 0, 3 }, { 3, 0 }, { 1, 2 }, { 2, 1 }, { 1, 3 }, { 3, 1 } } ); }

inline state_set set_of( std::size_t n, std::initializer_list<state_t> xs = {} ) { return state_set( n, xs ); }

inline lts make_lts( std::size_t n, std::vector<std::string> labels, std::vector<transition> ts )
{
    return lts( n, 0, std::move( labels ), std::move( ts ) );
}

namespace oracle
{

using mask = std::uint64_t;

inline mask bit( state_t s ) { return mask{ 1 } << s; }

inline mask to_mask( const state_set& x )
{
    mask m = 0;
    x.for_each( [ & ]( state_t s ) { m |= bit( s ); } );
    return m;
}

inline state_set from_mask( std::size_t n, mask m )
{
    state_set out( n );
    for ( state_t s = 0; s < n; ++s )
        if ( m & bit( s ) )
            out.insert( s );
    return out;
}

inline std::vector<mask> tau_edges( const lts& l )
{
    std::vector<mask> out( l.state_count(), 0 );
    for ( const auto& t : l.transitions() )
        if ( t.label == lts::tau )
            out[ t.src ] |= bit( t.dst );
    return out;
}

// States reachable from `from` in zero or more silent steps inside `within`.
inline mask reach( const std::vector<mask>& edges, mask from, mask within )
{
    mask seen = from & within;
    for ( mask prev = 0; prev != seen; )
    {
        prev = seen;
        for ( state_t s = 0; s < edges.size(); ++s )
            if ( seen & bit( s ) )
                seen |= edges[ s ] & within;
    }
    return seen;
}

inline mask closure( const lts& l, state_t s ) { return reach( tau_edges( l ), bit( s ), ~mask{ 0 } ); }

// Is there an infinite silent path from u inside w that visits every state of w?
inline bool covering_path( const std::vector<mask>& edges, state_t u, mask w )
{
    if ( !( w & bit( u ) ) || reach( edges, bit( u ), w ) != w )
        return false;
    std::vector<state_t> members;
    for ( state_t s = 0; s < edges.size(); ++s )
        if ( w & bit( s ) )
            members.push_back( s );
    std::map<state_t, mask> from;
    for ( auto s : members )
        from[ s ] = reach( edges, bit( s ), w );
    // The components must form a chain under reachability.
    for ( auto x : members )
        for ( auto y : members )
            if ( !( from[ x ] & bit( y ) ) && !( from[ y ] & bit( x ) ) )
                return false;
    // The last component must contain a cycle.
    for ( auto x : members )
    {
        bool last = true;
        for ( auto y : members )
            if ( ( from[ x ] & bit( y ) ) && !( from[ y ] & bit( x ) ) )
                last = false;
        if ( last && ( edges[ x ] & from[ x ] & w ) != 0 )
            for ( auto y : members )
                if ( ( edges[ x ] & bit( y ) ) && ( from[ y ] & bit( x ) ) )
                    return true;
    }
    return false;
}

// Every (visited, visited at positions >= 1) pair of infinite silent paths
// from s inside x, by trying every candidate subset.
inline std::set<std::pair<mask, mask>> visited_sets( const lts& l, state_t s, const state_set& x )
{
    std::set<std::pair<mask, mask>> out;
    auto edges = tau_edges( l );
    auto xm = to_mask( x );
    if ( !( xm & bit( s ) ) )
        return out;
    auto others = xm & ~bit( s );
    for ( mask sub = others;; sub = ( sub - 1 ) & others )
    {
        auto v = sub | bit( s );
        if ( covering_path( edges, s, v ) )
        {
            bool on_cycle = false;
            for ( state_t u = 0; u < l.state_count(); ++u )
                if ( ( edges[ s ] & bit( u ) & v ) && ( reach( edges, bit( u ), v ) & bit( s ) ) )
                    on_cycle = true;
            if ( on_cycle )
                out.emplace( v, v );
            for ( state_t u = 0; u < l.state_count(); ++u )
                if ( u != s && ( edges[ s ] & bit( u ) & v ) && covering_path( edges, u, v & ~bit( s ) ) )
                    out.emplace( v, v & ~bit( s ) );
        }
        if ( sub == 0 )
            break;
    }
    return out;
}

inline bool diverges( const lts& l, state_t s, const state_set& x ) { return !visited_sets( l, s, x ).empty(); }

inline mask tau_successors( const lts& l, state_t s ) { return tau_edges( l )[ s ]; }

inline mask tau_plus( const lts& l, state_t s )
{
    auto edges = tau_edges( l );
    return reach( edges, edges[ s ], ~mask{ 0 } );
}

inline mask image( const relation& r, mask from )
{
    mask out = 0;
    for ( auto [ a, b ] : r.pairs() )
        if ( from & bit( a ) )
            out |= bit( b );
    return out;
}

inline mask preimage( const relation& r, state_t t )
{
    mask out = 0;
    for ( auto [ a, b ] : r.pairs() )
        if ( b == t )
            out |= bit( a );
    return out;
}

inline bool transfer_ok( const lts& l, const relation& r, state_t s, state_t t )
{
    auto cl = closure( l, t );
    for ( const auto& tr : l.transitions() )
    {
        if ( tr.src != s )
            continue;
        bool matched = false;
        for ( state_t mid = 0; mid < l.state_count() && !matched; ++mid )
        {
            if ( !( cl & bit( mid ) ) || !r.contains( s, mid ) )
                continue;
            if ( tr.label == lts::tau && r.contains( tr.dst, mid ) )
                matched = true;
            for ( const auto& tr2 : l.transitions() )
                if ( tr2.src == mid && tr2.label == tr.label && r.contains( tr.dst, tr2.dst ) )
                    matched = true;
        }
        if ( !matched )
            return false;
    }
    return true;
}

// Condition c on the single pair (s, t), straight from its definition.
inline bool pair_ok( const lts& l, const relation& r, condition_id c, state_t s, state_t t )
{
    if ( c == condition_id::T )
        return transfer_ok( l, r, s, t );
    auto n = l.state_count();
    bool related_premise = c == condition_id::D || c == condition_id::D0 || c == condition_id::D1 ||
                           c == condition_id::D4 || c == condition_id::GKPP;
    auto domain = related_premise ? from_mask( n, preimage( r, t ) ) : l.all_states();
    bool plus = c == condition_id::D4 || c == condition_id::INT;
    auto targets = plus ? oracle::tau_plus( l, t ) : oracle::tau_successors( l, t );
    for ( auto [ full, tail ] : visited_sets( l, s, domain ) )
    {
        bool ok = false;
        if ( c == condition_id::D3 )
        {
            auto y = image( r, full );
            ok = ( y & bit( t ) ) && diverges( l, t, from_mask( n, y ) );
        }
        else
            for ( state_t t2 = 0; t2 < n; ++t2 )
            {
                if ( !( targets & bit( t2 ) ) )
                    continue;
                auto related = preimage( r, t2 );
                if ( c == condition_id::D || c == condition_id::D0 )
                    ok = ok || ( full & ~related ) == 0;
                else if ( c == condition_id::GKPP )
                    ok = ok || ( tail & related ) != 0;
                else
                    ok = ok || ( full & related ) != 0;
            }
        if ( !ok )
            return false;
    }
    return true;
}

inline bool holds( const lts& l, const relation& r, condition_id c )
{
    for ( auto [ s, t ] : r.pairs() )
        if ( !pair_ok( l, r, c, s, t ) )
            return false;
    return true;
}

// Start from all pairs; delete failing pairs (with their mirrors) one at a
// time until none is left.
inline partition naive_equivalence( const lts& l, bool with_divergence )
{
    auto n = l.state_count();
    std::vector<std::set<std::pair<mask, mask>>> visits;
    for ( state_t s = 0; s < n; ++s )
        visits.push_back( visited_sets( l, s, l.all_states() ) );
    auto divergence_ok = [ & ]( const relation& r, state_t s, state_t t ) {
        auto targets = tau_successors( l, t );
        for ( const auto& v : visits[ s ] )
        {
            bool ok = false;
            for ( state_t t2 = 0; t2 < n && !ok; ++t2 )
                ok = ( targets & bit( t2 ) ) && ( v.first & preimage( r, t2 ) ) != 0;
            if ( !ok )
                return false;
        }
        return true;
    };
    auto r = relation::total( n );
    for ( bool changed = true; changed; )
    {
        changed = false;
        for ( auto [ s, t ] : r.pairs() )
        {
            if ( !r.contains( s, t ) )
                continue;
            bool ok = transfer_ok( l, r, s, t ) && transfer_ok( l, r, t, s );
            if ( ok && with_divergence )
                ok = divergence_ok( r, s, t ) && divergence_ok( r, t, s );
            if ( !ok )
            {
                r.erase( s, t );
                r.erase( t, s );
                changed = true;
            }
        }
    }
    return partition_of_equivalence( r );
}

// Every silent walk with at most `max_steps` steps from `from`.
inline void silent_walks( const lts& l, std::vector<state_t>& walk, std::size_t max_steps,
                          const std::function<void( const std::vector<state_t>& )>& visit )
{
    visit( walk );
    if ( walk.size() > max_steps )
        return;
    for ( const auto& tr : l.transitions() )
        if ( tr.src == walk.back() && tr.label == lts::tau )
        {
            walk.push_back( tr.dst );
            silent_walks( l, walk, max_steps, visit );
            walk.pop_back();
        }
}

// Stuttering property by enumerating every silent walk of length <= 2n, which
// covers every state lying on some silent path between two given states.
inline bool stuttering( const lts& l, const relation& r )
{
    auto n = l.state_count();
    bool ok = true;
    for ( state_t s = 0; s < n && ok; ++s )
        for ( state_t t0 = 0; t0 < n && ok; ++t0 )
        {
            if ( !r.contains( s, t0 ) )
                continue;
            std::vector<state_t> walk{ t0 };
            silent_walks( l, walk, 2 * n, [ & ]( const std::vector<state_t>& w ) {
                if ( !r.contains( s, w.back() ) )
                    return;
                for ( auto x : w )
                    if ( !r.contains( s, x ) )
                        ok = false;
            } );
        }
    return ok;
}

// Contracted coloured traces with at most max_actions actions, by exploring
// (state, trace) configurations.
inline std::set<coloured_trace> coloured_traces( const lts& l, const partition& p, state_t s,
                                                 std::size_t max_actions )
{
    using config = std::pair<state_t, coloured_trace>;
    std::set<config> seen;
    std::vector<config> work;
    coloured_trace start;
    start.colours.push_back( p.block_of( s ) );
    work.emplace_back( s, start );
    seen.insert( work.back() );
    while ( !work.empty() )
    {
        auto [ u, trace ] = work.back();
        work.pop_back();
        for ( const auto& tr : l.transitions() )
        {
            if ( tr.src != u )
                continue;
            auto next = trace;
            auto colour = p.block_of( tr.dst );
            if ( !( tr.label == lts::tau && colour == next.colours.back() ) )
            {
                next.actions.push_back( tr.label );
                next.colours.push_back( colour );
            }
            if ( next.actions.size() > max_actions )
                continue;
            config c{ tr.dst, next };
            if ( seen.insert( c ).second )
                work.push_back( c );
        }
    }
    std::set<coloured_trace> out;
    for ( const auto& c : seen )
        out.insert( c.second );
    return out;
}

} // namespace oracle

} // namespace bbdiv::test
