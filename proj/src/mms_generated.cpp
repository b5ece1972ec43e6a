// Generated by tools/gen_mms.py. Do not edit by hand.

#include <cmath>

#include "mms_generated.hpp"

namespace fhd::mms_generated {

using std::cos;
using std::sin;

SpatialVectorJet velocity_profile(const Eigen::Vector3d& pt) {
  const double x = pt.x(), y = pt.y(), z = pt.z();
  SpatialVectorJet j;
  const double c0 = M_PI*y;
  const double c1 = std::sin(c0);
  const double c2 = M_PI*z;
  const double c3 = std::sin(c2);
  const double c4 = M_PI*x;
  const double c5 = std::sin(c4);
  const double c6 = std::pow(M_PI, 2);
  j.value(0) = c1;
  j.value(1) = c3;
  j.value(2) = c5;
  j.grad(0, 0) = 0;
  j.grad(1, 0) = 0;
  j.grad(2, 0) = M_PI*std::cos(c4);
  j.grad(0, 1) = M_PI*std::cos(c0);
  j.grad(1, 1) = 0;
  j.grad(2, 1) = 0;
  j.grad(0, 2) = 0;
  j.grad(1, 2) = M_PI*std::cos(c2);
  j.grad(2, 2) = 0;
  j.laplacian(0) = -c1*c6;
  j.laplacian(1) = -c3*c6;
  j.laplacian(2) = -c5*c6;
  j.grad_div(0) = 0;
  j.grad_div(1) = 0;
  j.grad_div(2) = 0;
  return j;
}

SpatialVectorJet rotation_profile(const Eigen::Vector3d& pt) {
  const double x = pt.x(), y = pt.y(), z = pt.z();
  SpatialVectorJet j;
  const double c0 = y - 1;
  const double c1 = c0*y;
  const double c2 = z*(z - 1);
  const double c3 = x - 1;
  const double c4 = c3*x;
  const double c5 = c2*c4;
  const double c6 = 2*x;
  const double c7 = c6 - 1;
  const double c8 = c2*c7;
  const double c9 = 2*y;
  const double c10 = c9 - 1;
  const double c11 = c1*(2*z - 1);
  const double c12 = c3*c6;
  const double c13 = c0*c2*c9;
  j.value(0) = c1*c5;
  j.value(1) = 0;
  j.value(2) = 0;
  j.grad(0, 0) = c1*c8;
  j.grad(1, 0) = 0;
  j.grad(2, 0) = 0;
  j.grad(0, 1) = c10*c5;
  j.grad(1, 1) = 0;
  j.grad(2, 1) = 0;
  j.grad(0, 2) = c11*c4;
  j.grad(1, 2) = 0;
  j.grad(2, 2) = 0;
  j.laplacian(0) = c1*c12 + c12*c2 + c13;
  j.laplacian(1) = 0;
  j.laplacian(2) = 0;
  j.grad_div(0) = c13;
  j.grad_div(1) = c10*c8;
  j.grad_div(2) = c11*c7;
  return j;
}

SpatialVectorJet magnetization_profile(const Eigen::Vector3d& pt) {
  const double x = pt.x(), y = pt.y(), z = pt.z();
  SpatialVectorJet j;
  const double c0 = M_PI*x;
  const double c1 = std::sin(c0);
  const double c2 = M_PI*y;
  const double c3 = std::sin(c2);
  const double c4 = M_PI*z;
  const double c5 = std::sin(c4);
  const double c6 = c3*c5;
  const double c7 = c1*c6;
  const double c8 = std::cos(c0);
  const double c9 = M_PI*c1;
  const double c10 = c5*std::cos(c2);
  const double c11 = c3*std::cos(c4);
  const double c12 = std::pow(M_PI, 2);
  const double c13 = c12*c7;
  const double c14 = c12*c8;
  j.value(0) = c7;
  j.value(1) = 0;
  j.value(2) = 0;
  j.grad(0, 0) = M_PI*c6*c8;
  j.grad(1, 0) = 0;
  j.grad(2, 0) = 0;
  j.grad(0, 1) = c10*c9;
  j.grad(1, 1) = 0;
  j.grad(2, 1) = 0;
  j.grad(0, 2) = c11*c9;
  j.grad(1, 2) = 0;
  j.grad(2, 2) = 0;
  j.laplacian(0) = -3*c13;
  j.laplacian(1) = 0;
  j.laplacian(2) = 0;
  j.grad_div(0) = -c13;
  j.grad_div(1) = c10*c14;
  j.grad_div(2) = c11*c14;
  return j;
}

SpatialVectorJet field_profile(const Eigen::Vector3d& pt) {
  const double x = pt.x(), y = pt.y(), z = pt.z();
  SpatialVectorJet j;
  const double c0 = 2*x;
  const double c1 = c0 - 1;
  const double c2 = std::pow(y, 2);
  const double c3 = y - 1;
  const double c4 = c2*std::pow(c3, 2);
  const double c5 = x - 1;
  const double c6 = c5*x;
  const double c7 = c4*c6;
  const double c8 = std::pow(z, 2);
  const double c9 = z - 1;
  const double c10 = c8*std::pow(c9, 2);
  const double c11 = 2000*c10;
  const double c12 = 2*y;
  const double c13 = c12 - 1;
  const double c14 = std::pow(x, 2);
  const double c15 = c14*std::pow(c5, 2);
  const double c16 = c3*y;
  const double c17 = c15*c16;
  const double c18 = c15*c4;
  const double c19 = 2000*c18;
  const double c20 = 2*z;
  const double c21 = c20 - 1;
  const double c22 = c9*z;
  const double c23 = c21*c22;
  const double c24 = c0*c5;
  const double c25 = std::pow(c1, 2);
  const double c26 = 4000*c1;
  const double c27 = c10*c6;
  const double c28 = c13*c16*c26*c27;
  const double c29 = c23*c26*c7;
  const double c30 = c12*c3;
  const double c31 = std::pow(c13, 2);
  const double c32 = 4000*c13;
  const double c33 = c17*c23*c32;
  const double c34 = std::pow(c21, 2);
  const double c35 = 3*c10;
  const double c36 = c35*c4;
  const double c37 = -c20 + c34 + 2*c8;
  const double c38 = -c12 + 2*c2 + c31;
  const double c39 = c15*c35;
  const double c40 = -c0 + 2*c14 + c25;
  const double c41 = c10*c16;
  const double c42 = 3*c18;
  const double c43 = c15*c22;
  const double c44 = c22*c4;
  const double c45 = 4000*c21;
  const double c46 = c24*c41;
  const double c47 = c24*c44;
  const double c48 = c30*c43;
  j.value(0) = c1*c11*c7;
  j.value(1) = c11*c13*c17;
  j.value(2) = c19*c23;
  j.grad(0, 0) = c11*c4*(c24 + c25);
  j.grad(1, 0) = c28;
  j.grad(2, 0) = c29;
  j.grad(0, 1) = c28;
  j.grad(1, 1) = c11*c15*(c30 + c31);
  j.grad(2, 1) = c33;
  j.grad(0, 2) = c29;
  j.grad(1, 2) = c33;
  j.grad(2, 2) = c19*(c20*c9 + c34);
  j.laplacian(0) = c26*(c27*c38 + c36 + c37*c7);
  j.laplacian(1) = c32*(c17*c37 + c39 + c40*c41);
  j.laplacian(2) = c45*(c38*c43 + c40*c44 + c42);
  j.grad_div(0) = c26*(c27*c31 + c34*c7 + c36 + c46 + c47);
  j.grad_div(1) = c32*(c17*c34 + c25*c41 + c39 + c46 + c48);
  j.grad_div(2) = c45*(c25*c44 + c31*c43 + c42 + c47 + c48);
  return j;
}

SpatialScalarJet pressure_profile(const Eigen::Vector3d& pt) {
  const double x = pt.x(), y = pt.y(), z = pt.z();
  SpatialScalarJet j;
  const double c0 = std::pow(y, 2);
  const double c1 = std::pow(z, 2);
  const double c2 = -3*std::pow(x, 2);
  const double c3 = c1 + c2;
  const double c4 = 40*z;
  const double c5 = 240*y*z;
  j.value = c4*y*(-c0 - c3);
  j.grad(0) = c5*x;
  j.grad(1) = c4*(-3*c0 - c3);
  j.grad(2) = 40*y*(-c0 - 3*c1 - c2);
  j.laplacian = -c5;
  return j;
}

SpatialScalarJet potential_profile(const Eigen::Vector3d& pt) {
  const double x = pt.x(), y = pt.y(), z = pt.z();
  SpatialScalarJet j;
  const double c0 = std::pow(x, 2);
  const double c1 = x - 1;
  const double c2 = std::pow(c1, 2);
  const double c3 = std::pow(y, 2);
  const double c4 = y - 1;
  const double c5 = c3*std::pow(c4, 2);
  const double c6 = std::pow(z, 2);
  const double c7 = z - 1;
  const double c8 = c6*std::pow(c7, 2);
  const double c9 = c5*c8;
  const double c10 = 2*x;
  const double c11 = c10 - 1;
  const double c12 = 2000*c9;
  const double c13 = 2*y;
  const double c14 = c13 - 1;
  const double c15 = 2000*c0*c2;
  const double c16 = c15*c8;
  const double c17 = 2*z;
  const double c18 = c17 - 1;
  const double c19 = c15*c5;
  j.value = 1000*c0*c2*c9;
  j.grad(0) = c1*c11*c12*x;
  j.grad(1) = c14*c16*c4*y;
  j.grad(2) = c18*c19*c7*z;
  j.laplacian = c12*(2*c0 - c10 + std::pow(c11, 2)) + c16*(-c13 + std::pow(c14, 2) + 2*c3) + c19*(-c17 + std::pow(c18, 2) + 2*c6);
  return j;
}

Eigen::Vector3d momentum_forcing(const Eigen::Vector3d& pt, double g, double dg, const ModelParams& p) {
  const double x = pt.x(), y = pt.y(), z = pt.z();
  const double rho = p.rho, kappa = p.kappa, eta = p.eta, zeta = p.zeta, mu0 = p.mu0;
  const double sigma = p.sigma, eta_p = p.eta_p, lambda_p = p.lambda_p, tau = p.tau, chi0 = p.chi0;
  (void)kappa;
  (void)sigma;
  (void)eta_p;
  (void)lambda_p;
  (void)tau;
  (void)chi0;
  Eigen::Vector3d f;
  const double c0 = M_PI*y;
  const double c1 = std::sin(c0);
  const double c2 = std::pow(M_PI, 2);
  const double c3 = eta + zeta;
  const double c4 = c2*c3*g;
  const double c5 = std::pow(g, 2);
  const double c6 = M_PI*c5;
  const double c7 = M_PI*z;
  const double c8 = std::sin(c7);
  const double c9 = c8*std::cos(c0);
  const double c10 = std::pow(x, 2);
  const double c11 = c10 - x;
  const double c12 = std::pow(y, 2);
  const double c13 = c12 - y;
  const double c14 = std::pow(c13, 2);
  const double c15 = std::pow(z, 2);
  const double c16 = c15 - z;
  const double c17 = std::pow(c16, 2);
  const double c18 = c14*c17;
  const double c19 = c11*c18;
  const double c20 = 4000*c19;
  const double c21 = 4000*x - 2000;
  const double c22 = c18*c21*(2*x - 1);
  const double c23 = c5*mu0;
  const double c24 = M_PI*x;
  const double c25 = std::sin(c24);
  const double c26 = c1*c25*c8;
  const double c27 = c23*c26;
  const double c28 = c1*std::cos(c24);
  const double c29 = M_PI*c19*c21;
  const double c30 = (1.0/2.0)*c23;
  const double c31 = c25*std::cos(c7);
  const double c32 = c11*c13;
  const double c33 = 2*g*zeta;
  const double c34 = c17*c32*(4*y - 2);
  const double c35 = c21*c27;
  const double c36 = c21*c26;
  const double c37 = 120*y;
  const double c38 = c11*c16;
  const double c39 = c14*c38*(4*z - 2);
  f(0) = c1*c4 - c27*(c20 + c22) + c30*(c20*c26 + c22*c26 + c28*c29*c8) + rho*(c1*dg + c6*c9) + 240*x*y*z;
  f(1) = 120*c10*z - 120*c12*z + c2*c3*c8*g - c32*c33*(2*z - 1) - c34*c35 + (1.0/2.0)*c5*mu0*(c25*c29*c9 + c34*c36) + rho*(c31*c6 + c8*dg) - 40*std::pow(z, 3);
  f(2) = c10*c37 - c15*c37 + c25*c4 + c30*(c1*c29*c31 + c36*c39) + c33*c38*(2*y - 1) - c35*c39 + rho*(c25*dg + c28*c6) - 40*std::pow(y, 3);
  return f;
}

Eigen::Vector3d angular_forcing(const Eigen::Vector3d& pt, double g, double dg, const ModelParams& p) {
  const double x = pt.x(), y = pt.y(), z = pt.z();
  const double rho = p.rho, kappa = p.kappa, eta = p.eta, zeta = p.zeta, mu0 = p.mu0;
  const double sigma = p.sigma, eta_p = p.eta_p, lambda_p = p.lambda_p, tau = p.tau, chi0 = p.chi0;
  (void)eta;
  (void)sigma;
  (void)tau;
  (void)chi0;
  Eigen::Vector3d f;
  const double c0 = eta_p + lambda_p;
  const double c1 = std::pow(y, 2) - y;
  const double c2 = std::pow(z, 2) - z;
  const double c3 = c1*c2;
  const double c4 = 2*g;
  const double c5 = y - 1;
  const double c6 = 2*x;
  const double c7 = c6*(x - 1);
  const double c8 = z*(z - 1);
  const double c9 = 2*y;
  const double c10 = M_PI*z;
  const double c11 = std::pow(x, 2) - x;
  const double c12 = c11*c3;
  const double c13 = c4*zeta;
  const double c14 = c6 - 1;
  const double c15 = std::pow(g, 2);
  const double c16 = M_PI*y;
  const double c17 = c15*std::sin(c16);
  const double c18 = std::sin(c10);
  const double c19 = c11*c15;
  const double c20 = c2*(c9 - 1);
  const double c21 = M_PI*x;
  const double c22 = std::sin(c21);
  const double c23 = c1*(2*z - 1);
  const double c24 = c0*c14*g;
  const double c25 = 1000*std::pow(c11, 2)*c17*c18*c22*mu0;
  f(0) = -c0*c3*c4 - c13*(-2*c12 - M_PI*std::cos(c10)) - eta_p*g*(c5*c7*y + c5*c8*c9 + c7*c8) + kappa*rho*(c12*dg + c14*c17*c3 + c18*c19*c20 + c19*c22*c23);
  f(1) = std::pow(c1, 2)*c2*c25*(4*z - 2) + M_PI*c13*std::cos(c21) - c20*c24;
  f(2) = -c1*std::pow(c2, 2)*c25*(4*y - 2) - c23*c24 + 2*M_PI*g*zeta*std::cos(c16);
  return f;
}

Eigen::Vector3d magnetization_forcing(const Eigen::Vector3d& pt, double g, double dg, const ModelParams& p) {
  const double x = pt.x(), y = pt.y(), z = pt.z();
  const double rho = p.rho, kappa = p.kappa, eta = p.eta, zeta = p.zeta, mu0 = p.mu0;
  const double sigma = p.sigma, eta_p = p.eta_p, lambda_p = p.lambda_p, tau = p.tau, chi0 = p.chi0;
  (void)rho;
  (void)kappa;
  (void)eta;
  (void)zeta;
  (void)mu0;
  (void)eta_p;
  (void)lambda_p;
  Eigen::Vector3d f;
  const double c0 = M_PI*x;
  const double c1 = std::sin(c0);
  const double c2 = M_PI*y;
  const double c3 = std::sin(c2);
  const double c4 = M_PI*z;
  const double c5 = std::sin(c4);
  const double c6 = c1*c3*c5;
  const double c7 = M_PI*std::pow(g, 2);
  const double c8 = std::pow(x, 2);
  const double c9 = std::pow(y, 2);
  const double c10 = std::pow(z, 2);
  const double c11 = g/tau;
  const double c12 = z - 1;
  const double c13 = y - 1;
  const double c14 = 2000*c11*c8*chi0*std::pow(x - 1, 2);
  f(0) = std::pow(c1, 2)*c3*c7*std::cos(c4) + c1*std::pow(c5, 2)*c7*std::cos(c2) + c11*(c1*c3*c5 - 1000*chi0*std::pow(c10 - z, 2)*(c8 - x)*std::pow(c9 - y, 2)*(4*x - 2)) + std::pow(c3, 2)*c5*c7*std::cos(c0) + c6*dg + 3*std::pow(M_PI, 2)*c6*g*sigma;
  f(1) = -c10*std::pow(c12, 2)*c13*c14*y*(2*y - 1);
  f(2) = -c12*std::pow(c13, 2)*c14*c9*z*(2*z - 1);
  return f;
}

double gauss_forcing(const Eigen::Vector3d& pt, double g, double dg, const ModelParams& p) {
  const double x = pt.x(), y = pt.y(), z = pt.z();
  const double rho = p.rho, kappa = p.kappa, eta = p.eta, zeta = p.zeta, mu0 = p.mu0;
  const double sigma = p.sigma, eta_p = p.eta_p, lambda_p = p.lambda_p, tau = p.tau, chi0 = p.chi0;
  (void)dg;
  (void)rho;
  (void)kappa;
  (void)eta;
  (void)zeta;
  (void)sigma;
  (void)eta_p;
  (void)lambda_p;
  (void)tau;
  (void)chi0;
  double f;
  const double c0 = std::pow(x, 2) - x;
  const double c1 = std::pow(y, 2) - y;
  const double c2 = std::pow(c1, 2);
  const double c3 = std::pow(z, 2) - z;
  const double c4 = std::pow(c3, 2);
  const double c5 = c2*c4;
  const double c6 = std::pow(c0, 2);
  const double c7 = 4000*c6;
  const double c8 = 1000*c6;
  f = -g*mu0*(4000*c0*c5 + c1*c4*c7 + c2*c3*c7 + c2*c8*(2*z - 1)*(4*z - 2) + c4*c8*(2*y - 1)*(4*y - 2) + 1000*c5*(2*x - 1)*(4*x - 2) + M_PI*std::sin(M_PI*y)*std::sin(M_PI*z)*std::cos(M_PI*x));
  return f;
}

}  // namespace fhd::mms_generated
