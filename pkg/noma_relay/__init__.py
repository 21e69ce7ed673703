"""noma-relay - outage, ergodic rate and energy efficiency of cooperative NOMA with a FD/HD user relay."""
