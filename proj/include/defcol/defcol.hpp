#pragma once

#include "defcol/certificate.hpp"
#include "defcol/coloring.hpp"
#include "defcol/discharging.hpp"
#include "defcol/enumerate.hpp"
#include "defcol/graph.hpp"
#include "defcol/graph6.hpp"
#include "defcol/io.hpp"
#include "defcol/max_flow.hpp"
#include "defcol/potential.hpp"
#include "defcol/proof_colorer.hpp"
#include "defcol/rational.hpp"
#include "defcol/sparsity.hpp"
#include "defcol/survey.hpp"
#include "defcol/vertex_set.hpp"
