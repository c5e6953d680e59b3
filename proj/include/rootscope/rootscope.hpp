#pragma once

#include "rootscope/catalog.hpp"
#include "rootscope/error.hpp"
#include "rootscope/liealg.hpp"
#include "rootscope/model.hpp"
#include "rootscope/numkit.hpp"
#include "rootscope/radiality.hpp"
#include "rootscope/report.hpp"
#include "rootscope/rootspace.hpp"
#include "rootscope/sampling.hpp"
#include "rootscope/theorem.hpp"
