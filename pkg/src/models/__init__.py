"""
问题模型模块
领域类型、配置目录、实例读写与目标函数
"""
from .entities import BinType, Generator, Site, Configuration, Plan, Objectives
from .catalog import default_bin_types, default_catalog, enumerate_configs
from .instance import (
    Instance, InstanceFile, load_instance, save_instance,
    instance_from_dict, instance_to_dict,
)
from .objectives import evaluate, mean_walk

__all__ = [
    'BinType',
    'Generator',
    'Site',
    'Configuration',
    'Plan',
    'Objectives',
    'default_bin_types',
    'default_catalog',
    'enumerate_configs',
    'Instance',
    'InstanceFile',
    'load_instance',
    'save_instance',
    'instance_from_dict',
    'instance_to_dict',
    'evaluate',
    'mean_walk',
]
