#ifndef FHD_SRC_MMS_GENERATED_HPP
#define FHD_SRC_MMS_GENERATED_HPP

#include <Eigen/Core>

#include "fhd/forms.hpp"
#include "fhd/mms.hpp"

// Closed-form spatial profiles and forcings emitted by tools/gen_mms.py.
namespace fhd::mms_generated {

SpatialVectorJet velocity_profile(const Eigen::Vector3d& x);
SpatialVectorJet rotation_profile(const Eigen::Vector3d& x);
SpatialVectorJet magnetization_profile(const Eigen::Vector3d& x);
SpatialVectorJet field_profile(const Eigen::Vector3d& x);
SpatialScalarJet pressure_profile(const Eigen::Vector3d& x);
SpatialScalarJet potential_profile(const Eigen::Vector3d& x);

Eigen::Vector3d momentum_forcing(const Eigen::Vector3d& x, double g, double dg,
                                 const ModelParams& p);
Eigen::Vector3d angular_forcing(const Eigen::Vector3d& x, double g, double dg,
                                const ModelParams& p);
Eigen::Vector3d magnetization_forcing(const Eigen::Vector3d& x, double g,
                                      double dg, const ModelParams& p);
double gauss_forcing(const Eigen::Vector3d& x, double g, double dg,
                     const ModelParams& p);

}  // namespace fhd::mms_generated

#endif  // FHD_SRC_MMS_GENERATED_HPP
