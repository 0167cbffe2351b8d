from ._fluxcool import (
    TWO_PI,
    Activation,
    Channel,
    Drive,
    FluxcoolError,
    Method,
    Model,
    TransitionChannel,
    Waveform,
    build_channel,
    equilibrium_p11,
    figure_presets,
    generator,
    lz_probability,
    mdlz_rate,
    optimal_amplitude,
    rates,
    static_rate,
    steady_state,
    temperature_from_millikelvin,
)

__all__ = [
    "TWO_PI",
    "Activation",
    "Channel",
    "Drive",
    "FluxcoolError",
    "Method",
    "Model",
    "TransitionChannel",
    "Waveform",
    "build_channel",
    "equilibrium_p11",
    "figure_presets",
    "generator",
    "lz_probability",
    "mdlz_rate",
    "optimal_amplitude",
    "rates",
    "static_rate",
    "steady_state",
    "temperature_from_millikelvin",
]
