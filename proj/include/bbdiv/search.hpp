#pragma once

// Random small-scope search for pairs of relations that both satisfy T and a
// divergence condition while their composition violates that condition.

#include "conditions.hpp"
#include "fixpoint.hpp"
#include "generate.hpp"
#include "lts.hpp"
#include "relation.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace bbdiv
{

struct composition_witness
{
    lts system;
    relation first;
    relation second;
    condition_id condition;
};

struct composition_search_result
{
    std::optional<composition_witness> d_failure;  // T and D, composition fails D
    std::optional<composition_witness> d1_failure; // T and D1, composition fails D1
    std::size_t systems_tried = 0;
};

// Re-checks a witness from scratch.
inline bool is_composition_witness( const composition_witness& w, std::size_t lasso_bound = default_lasso_bound )
{
    check_options opt{ lasso_bound, std::nullopt };
    const auto& l = w.system;
    for ( const auto* r : { &w.first, &w.second } )
        if ( !check_condition( l, *r, condition_id::T, opt ).holds ||
             !check_condition( l, *r, w.condition, opt ).holds )
            return false;
    return !check_condition( l, compose( w.first, w.second ), w.condition, opt ).holds;
}

namespace detail
{

// Deletes offending pairs (with their mirror images) until T and `c` hold.
inline relation prune_to_condition( const lts& l, relation r, condition_id c, const check_options& opt )
{
    for ( ;; )
    {
        auto verdict = check_condition( l, r, condition_id::T, opt );
        if ( verdict.holds )
            verdict = check_condition( l, r, c, opt );
        if ( verdict.holds )
            return r;
        auto [ s, t ] = std::pair{ verdict.failure->s, verdict.failure->t };
        r.erase( s, t );
        r.erase( t, s );
    }
}

} // namespace detail

inline composition_search_result search_composition_counterexamples( const run_config& config,
                                                                     std::size_t max_systems = 50000,
                                                                     std::size_t candidates_per_system = 12 )
{
    composition_search_result result;
    generator gen( config.seed );
    check_options opt{ config.lasso_bound, std::nullopt };
    for ( ; result.systems_tried < max_systems && ( !result.d_failure || !result.d1_failure );
          ++result.systems_tried )
    {
        auto l = gen.random_lts( config.max_states, config.tau_density );
        auto bbd = relation::of_partition( compute_bbd( l, config.lasso_bound ) );
        for ( auto c : { condition_id::D, condition_id::D1 } )
        {
            auto& slot = c == condition_id::D ? result.d_failure : result.d1_failure;
            if ( slot )
                continue;
            std::vector<relation> pool;
            for ( std::size_t k = 0; k < candidates_per_system; ++k )
            {
                auto r = detail::prune_to_condition( l, gen.random_subrelation( bbd, 0.6, true ), c, opt );
                if ( r.empty() )
                    continue;
                bool fresh = true;
                for ( const auto& q : pool )
                    fresh = fresh && !( q == r );
                if ( fresh )
                    pool.push_back( std::move( r ) );
            }
            for ( std::size_t i = 0; i < pool.size() && !slot; ++i )
                for ( std::size_t j = 0; j < pool.size() && !slot; ++j )
                    if ( !check_condition( l, compose( pool[ i ], pool[ j ] ), c, opt ).holds )
                        slot = composition_witness{ l, pool[ i ], pool[ j ], c };
        }
    }
    return result;
}

} // namespace bbdiv
