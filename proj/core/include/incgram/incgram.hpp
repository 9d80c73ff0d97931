#pragma once

#include "incgram/automaton.hpp"
#include "incgram/enumerate.hpp"
#include "incgram/error.hpp"
#include "incgram/fitting.hpp"
#include "incgram/grammar.hpp"
#include "incgram/morphism.hpp"
#include "incgram/parse_state.hpp"
#include "incgram/render.hpp"
#include "incgram/semiring.hpp"
#include "incgram/signature.hpp"
#include "incgram/state_format.hpp"
#include "incgram/weighted.hpp"
