#pragma once

#include <string>
#include <utility>
#include <vector>

#include "stepreg/dataset.hpp"
#include "stepreg/datasim.hpp"
#include "stepreg/estimator.hpp"
#include "stepreg/sampler.hpp"
#include "stepreg/voronoi.hpp"

namespace stepreg {

/* All text formats carry full double precision so a rerun with the same
 * seed reproduces files byte for byte. Loaders reject bad input with the
 * offending line number; missing files and malformed content are usage
 * errors (std::invalid_argument). */

LabeledDataset load_dataset_csv(const std::string& path);                   /* x,y */
void save_dataset_csv(const LabeledDataset& data, const std::string& path);

PosteriorMeanCurve load_curve_csv(const std::string& path);                 /* u,mean */
void save_curve_csv(const PosteriorMeanCurve& curve, const std::string& path);

void save_histogram_csv(const ModelSizeHistogram& hist, const std::string& path); /* k,count */

/* k,mass rows for exact distributions; first_k names the first entry */
void save_mass_csv(const std::vector<double>& mass, int first_k, const std::string& path);

void save_trace_csv(const ChainTrace& trace, const std::string& path);      /* iter,k,splits */

CovariateSet load_covariates_csv(const std::string& path);                  /* x1,...,xd,y */
void save_points_2d_csv(const std::vector<Point2D>& pts, const std::string& path);

/* x1,...,xd,mean over the given locations */
void save_surface_csv(const std::vector<std::vector<double>>& points, const std::vector<double>& mean,
                      const std::string& path);

std::vector<double> load_table_prior_csv(const std::string& path);          /* k,mass; k = 1.. contiguous */

std::string format_double(double v);  /* round-trip exact */

}  // namespace stepreg
