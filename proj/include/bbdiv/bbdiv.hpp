#pragma once

#include "aut.hpp"
#include "colouring.hpp"
#include "conditions.hpp"
#include "enumerate.hpp"
#include "error.hpp"
#include "eval.hpp"
#include "fixpoint.hpp"
#include "formula.hpp"
#include "generate.hpp"
#include "lasso.hpp"
#include "lts.hpp"
#include "partition.hpp"
#include "quotient.hpp"
#include "relation.hpp"
#include "rewrite.hpp"
#include "search.hpp"
#include "state_set.hpp"
#include "stuttering.hpp"
#include "synthesis.hpp"
