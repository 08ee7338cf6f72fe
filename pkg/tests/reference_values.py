"""Published reference numbers the acceptance suite compares against."""

# simulation design: exponential(rate 0.5) data, weight x
SIM_BETAS = (1.2, 1.7, 2.5)
SIM_TS = (0.1, 0.2, 0.5, 0.7, 0.9)
SIM_NS = (30, 50, 70, 100)

# kernel-estimator MSE, indexed [beta][t-index][n-index]
KERNEL_MSE = {
    1.2: [[.04178, .02437, .01886, .01305],
          [.04717, .02838, .01998, .01390],
          [.06276, .04156, .03017, .02212],
          [.09471, .05791, .04032, .03301],
          [.12825, .08539, .05660, .04604]],
    1.7: [[.00314, .00226, .00134, .00112],
          [.00397, .00214, .00143, .00103],
          [.00716, .00377, .00277, .00216],
          [.01405, .00915, .00618, .00441],
          [.02835, .01516, .01253, .00888]],
    2.5: [[.00088, .00070, .00059, .00047],
          [.00097, .00078, .00065, .00050],
          [.00161, .00101, .00068, .00052],
          [.00334, .00158, .00108, .00073],
          [.00683, .00347, .00268, .00181]],
}

# parametric plug-in estimator at (beta=1.2, t=0.1, n=100)
PARAMETRIC_KEY_CELL = {"beta": 1.2, "t": 0.1, "n": 100, "bias": -0.005745, "mse": 0.0083792}

# maximum-likelihood fits on the relief-times fixture
RELIEF_EXP = {"lambda": 0.5263, "neg_loglik": 32.8371, "aic": 67.6742, "aicc": 67.8964,
              "bic": 68.6699}
RELIEF_GUMBEL2 = {"alpha": 4.0172, "lambda": 6.0221, "neg_loglik": 15.4089}
