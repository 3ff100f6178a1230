#pragma once

#include "acp/arith.hpp"
#include "acp/budget.hpp"
#include "acp/components.hpp"
#include "acp/enumerate.hpp"
#include "acp/error.hpp"
#include "acp/forms.hpp"
#include "acp/pinch.hpp"
#include "acp/primes.hpp"
#include "acp/quadruple.hpp"
#include "acp/render.hpp"
#include "acp/residues.hpp"
#include "acp/stats.hpp"
#include "acp/tree.hpp"
#include "acp/walks.hpp"
