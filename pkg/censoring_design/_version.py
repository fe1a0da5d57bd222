#!/usr/bin/env python3
# encoding : utf-8
# create at: 2026/9/14-下午3:56
version = "0.1.0"
