#pragma once

#include "corpus.hpp"
#include "error.hpp"
#include "export.hpp"
#include "graph.hpp"
#include "itemsets.hpp"
#include "scenarios.hpp"
#include "svg.hpp"
#include "synth.hpp"
#include "text.hpp"
#include "time.hpp"
#include "timeseries.hpp"
#include "tokenize.hpp"
