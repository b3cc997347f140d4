#pragma once

#include "assignment.hpp"
#include "cut_select.hpp"
#include "disks.hpp"
#include "expr.hpp"
#include "field_builder.hpp"
#include "grid.hpp"
#include "io.hpp"
#include "levelset.hpp"
#include "polyroots.hpp"
#include "radical.hpp"
#include "roots1d.hpp"
#include "roots2d.hpp"
#include "variation.hpp"
#include "verify.hpp"
