#pragma once

#include "sptree/audit.hpp"
#include "sptree/bench.hpp"
#include "sptree/config.hpp"
#include "sptree/entry.hpp"
#include "sptree/error.hpp"
#include "sptree/geometry.hpp"
#include "sptree/kdtree.hpp"
#include "sptree/octree.hpp"
#include "sptree/oracle.hpp"
#include "sptree/rtree.hpp"
#include "sptree/search.hpp"
#include "sptree/tree.hpp"
#include "sptree/tree_node.hpp"
#include "sptree/verify.hpp"
