#pragma once

namespace mpa {

// logistic per-patch law r*x*(1 - x/K)
double patch_growth(double x, double r, double K);
double patch_growth_derivative(double x, double r, double K);

// shared-field law r*x*(1 - z), z the total stock
double shared_field_growth(double x, double z, double r);

// aggregate law r*z*(1 - z); equals the shared-field law summed over any split
double aggregate_growth(double z, double r);

}
