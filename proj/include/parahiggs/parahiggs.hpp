#pragma once

#include "parahiggs/arith.hpp"
#include "parahiggs/bis_local.hpp"
#include "parahiggs/error.hpp"
#include "parahiggs/flow.hpp"
#include "parahiggs/matrix.hpp"
#include "parahiggs/parabolic.hpp"
#include "parahiggs/serialize.hpp"
