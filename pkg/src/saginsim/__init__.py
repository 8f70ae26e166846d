"""Seedable downlink simulator for a satellite / UAV-relay / ground network.

Submodules:
  channel     -- propagation and fading models for all three tiers
  scenario    -- world geometry, satellite orbit, hotspot detection
  link        -- per-link SINR/SNR arithmetic, AF gain, hover power
  combining   -- cooperative-diversity receiver mathematics
  association -- association maps and capacity/power/fairness scoring
  amud        -- coverage geometry, relay placement, power allocation, schemes
  config      -- INI config schema with fail-fast validation
  experiments -- sweep orchestration and CSV emission
  cli         -- command-line entry point
"""

__version__ = "0.1.0"
