/// \file coalsec.hpp
/// Umbrella header.

#ifndef COALSEC_COALSEC_HPP
#define COALSEC_COALSEC_HPP

#include "coalsec/channel.hpp"
#include "coalsec/coalition.hpp"
#include "coalsec/config.hpp"
#include "coalsec/format.hpp"
#include "coalsec/game.hpp"
#include "coalsec/geometry.hpp"
#include "coalsec/partition_enum.hpp"
#include "coalsec/scenario.hpp"
#include "coalsec/secrecy.hpp"
#include "coalsec/stability.hpp"
#include "coalsec/value_cache.hpp"
#include "coalsec/version.hpp"

#endif  // COALSEC_COALSEC_HPP
