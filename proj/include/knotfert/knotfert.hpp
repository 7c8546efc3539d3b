#pragma once

#include "knotfert/braid3.hpp"
#include "knotfert/cache.hpp"
#include "knotfert/closure.hpp"
#include "knotfert/codec.hpp"
#include "knotfert/diagram.hpp"
#include "knotfert/error.hpp"
#include "knotfert/fertility.hpp"
#include "knotfert/gauss.hpp"
#include "knotfert/invariants.hpp"
#include "knotfert/laurent.hpp"
#include "knotfert/rational.hpp"
#include "knotfert/tables.hpp"
