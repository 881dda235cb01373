#!/usr/bin/env python
# coding: utf-8

# # Example 0: Set up the configuration
#
# The configuration is stored as a file called .contractionpy-config in your
# home directory. It is written with default values the first time it is
# needed; an existing file is never overwritten.

# In[1]:


from contractionpy import ContractionConfig

config = ContractionConfig()
config.preview()


# ## Changing an option
#
# Values are validated on assignment: jobs must be a positive integer and
# the report format one of lines, csv, json.

# In[2]:


config.set('enumeration', 'jobs', 4)
config.set('cache', 'directory', '~/.cache/contractionpy')
config.save()
print(config.jobs, config.cache_directory)


# ## Back to the defaults

# In[3]:


config.reset()
config.preview()
