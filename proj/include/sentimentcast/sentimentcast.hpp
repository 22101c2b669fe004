#pragma once

#include "sentimentcast/csv.hpp"
#include "sentimentcast/dataset.hpp"
#include "sentimentcast/date.hpp"
#include "sentimentcast/error.hpp"
#include "sentimentcast/eval.hpp"
#include "sentimentcast/experiment.hpp"
#include "sentimentcast/html.hpp"
#include "sentimentcast/ingest.hpp"
#include "sentimentcast/lexicon.hpp"
#include "sentimentcast/matrix.hpp"
#include "sentimentcast/neuralnet.hpp"
#include "sentimentcast/plot.hpp"
#include "sentimentcast/rng.hpp"
#include "sentimentcast/synthetic.hpp"
